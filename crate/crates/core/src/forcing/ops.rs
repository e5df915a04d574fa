use std::collections::BTreeSet;

use super::{Forced, ForcingError, PartialAssignment, Witness};
use crate::words::{evaluate, trace, Letter, Word};

/// Anchors tried in order before falling back to a fresh anchor.
const ANCHOR_TRIES: usize = 64;
/// Rounds of stuck-point resolution allowed when closing an orbit.
const CLOSE_ROUNDS: usize = 64;

/// 0, 1, −1, 2, −2, …
fn rule_order() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|k| [k, -k]))
}

enum Walk {
    Closed(Vec<i64>),
    Stuck { point: i64, index: usize },
}

impl PartialAssignment {
    fn sigma_count(&self, letters: &[Letter]) -> i64 {
        letters.iter().filter(|l| l.generator == self.sigma).count() as i64
    }

    fn finish(&mut self, witness: Witness) -> Forced {
        Forced {
            witness,
            inserted: self.take_journal(),
        }
    }

    fn check_word(&self, w: &Word) -> Result<(), ForcingError> {
        if w.is_empty() {
            return Err(ForcingError::EmptyWord);
        }
        self.check_letters(w)
    }

    fn check_not_sigma_power(&self, w: &Word) -> Result<(), ForcingError> {
        self.check_word(w)?;
        if w.is_conjugate_power_of(&self.sigma) {
            return Err(ForcingError::ConjugatePower(w.to_string(), self.sigma.clone()));
        }
        Ok(())
    }

    /// Follows `letters` from `start`, defining every missing step to an
    /// isolated fresh point. Returns the trace.
    pub(crate) fn walk_define(
        &mut self,
        letters: &[Letter],
        start: i64,
        margin: i64,
        avoid: &BTreeSet<i64>,
    ) -> Result<Vec<i64>, ForcingError> {
        let mut avoid = avoid.clone();
        let mut x = start;
        let mut points = vec![x];
        avoid.insert(x);
        for l in letters {
            x = match crate::words::Action::step(self, l, x) {
                Some(y) => y,
                None => {
                    let f = self.fresh_isolated(margin, &avoid);
                    self.define(l, x, f)?;
                    f
                }
            };
            avoid.insert(x);
            points.push(x);
        }
        Ok(points)
    }

    /// Extends the tables so that `v` moves some point.
    pub fn force_nontrivial(&mut self, v: &Word) -> Result<Forced, ForcingError> {
        self.check_word(v)?;
        if v.uses_only(&self.sigma) {
            let r = v.letters().iter().map(Letter::sign).sum();
            return Ok(self.finish(Witness::Nontrivial {
                word: v.clone(),
                point: 0,
                image: r,
            }));
        }
        // v = σ^{r_1} v_1 σ^{r_2} v_2 ⋯ v_k σ^{r_{k+1}}
        let mut steps: Vec<(i64, &Letter)> = Vec::new();
        let mut r = 0;
        for l in v.letters() {
            if l.generator == self.sigma {
                r += l.sign();
            } else {
                steps.push((r, l));
                r = 0;
            }
        }
        let tail = r;
        let reach = steps.iter().map(|s| s.0.abs()).chain([tail.abs()]).max().unwrap_or(0);
        let margin = 2 * reach;
        let mut avoid = BTreeSet::new();
        let mut a = Vec::with_capacity(steps.len() + 1);
        for _ in 0..=steps.len() {
            let p = self.fresh_isolated(margin, &avoid);
            avoid.insert(p);
            a.push(p);
        }
        for (i, (r, l)) in steps.iter().enumerate() {
            self.define(l, a[i] + r, a[i + 1])?;
        }
        let image = evaluate(v, self, a[0])?;
        debug_assert_eq!(image, a[steps.len()] + tail);
        assert_ne!(image, a[0], "fresh points make the witness move");
        Ok(self.finish(Witness::Nontrivial {
            word: v.clone(),
            point: a[0],
            image,
        }))
    }

    /// Extends the first free generator so that `σ^r τ σ^-r` sends `x` to `y`
    /// coordinatewise.
    pub fn force_mapping(&mut self, x: &[i64], y: &[i64]) -> Result<Forced, ForcingError> {
        let distinct = |t: &[i64]| t.iter().collect::<BTreeSet<_>>().len() == t.len();
        if x.is_empty() || x.len() != y.len() || !distinct(x) || !distinct(y) {
            return Err(ForcingError::BadTuples);
        }
        let tau = self
            .tables
            .keys()
            .next()
            .cloned()
            .ok_or(ForcingError::Exhausted(0))?;
        let table = &self.tables[&tau];
        let win = self.protected;
        let r = rule_order()
            .find(|&r| {
                x.iter().all(|&p| !win.contains(p + r) && !table.contains_source(p + r))
                    && y.iter().all(|&q| !win.contains(q + r) && !table.contains_target(q + r))
            })
            .expect("tables are finite");
        for (&p, &q) in x.iter().zip(y) {
            self.insert(&tau, p + r, q + r)?;
        }
        let s = Word::generator(&self.sigma);
        let word = &(&s.pow(r) * &Word::generator(&tau)) * &s.pow(-r);
        for (&p, &q) in x.iter().zip(y) {
            debug_assert_eq!(evaluate(&word, self, p), Ok(q));
        }
        Ok(self.finish(Witness::Mapping {
            word,
            shift: r,
            sources: x.to_vec(),
            targets: y.to_vec(),
        }))
    }

    /// Extends the tables so that `⟨w⟩` has an orbit of length at least `t`.
    ///
    /// Anchors are tried in rule order starting at 0, so the chain runs
    /// through existing data near the origin whenever that data allows it.
    pub fn force_long_orbit(&mut self, w: &Word, t: usize) -> Result<Forced, ForcingError> {
        self.check_not_sigma_power(w)?;
        if t == 0 {
            return Err(ForcingError::ZeroTarget);
        }
        let margin = self.sigma_count(w);
        let k = w.len();
        let mut letters = Vec::with_capacity(k * (t - 1));
        for _ in 1..t {
            letters.extend(w.letters().iter().cloned());
        }
        let attempt = |base: &PartialAssignment, b: i64| -> Result<Option<(PartialAssignment, Vec<i64>)>, ForcingError> {
            let mut trial = base.clone();
            let points = trial.walk_define(&letters, b, margin, &BTreeSet::new())?;
            let chain: Vec<i64> = points.iter().step_by(k).copied().collect();
            let unique: BTreeSet<i64> = chain.iter().copied().collect();
            Ok((unique.len() == chain.len()).then_some((trial, chain)))
        };
        for b in rule_order().take(ANCHOR_TRIES) {
            if let Some((next, chain)) = attempt(self, b)? {
                *self = next;
                return Ok(self.finish(Witness::LongOrbit {
                    word: w.clone(),
                    chain,
                }));
            }
        }
        let mut failed = BTreeSet::new();
        for _ in 0..ANCHOR_TRIES {
            let b = self.fresh_isolated(margin, &failed);
            if let Some((next, chain)) = attempt(self, b)? {
                *self = next;
                return Ok(self.finish(Witness::LongOrbit {
                    word: w.clone(),
                    chain,
                }));
            }
            failed.insert(b);
        }
        Err(ForcingError::Exhausted(2 * ANCHOR_TRIES))
    }

    /// Follows `u` forward from `a` on defined data only.
    fn walk_cycle(&self, u: &[Letter], a: i64) -> Walk {
        let rounds = self.size() + 2;
        let mut x = a;
        let mut orbit = vec![a];
        for _ in 0..rounds {
            for (i, l) in u.iter().enumerate() {
                match crate::words::Action::step(self, l, x) {
                    Some(y) => x = y,
                    None => return Walk::Stuck { point: x, index: i },
                }
            }
            if x == a {
                return Walk::Closed(orbit);
            }
            orbit.push(x);
        }
        unreachable!("a partial injection cannot produce an unbounded injective walk")
    }

    /// Extends the tables so that the orbit of `a` under `⟨w⟩` is finite.
    pub fn force_finite_orbit(&mut self, w: &Word, a: i64) -> Result<Forced, ForcingError> {
        self.check_not_sigma_power(w)?;
        let (u, conj) = w.cyclic_reduce();
        let margin = self.sigma_count(w);
        let k = u.len();
        let start = *self
            .walk_define(&conj, a, margin, &BTreeSet::new())?
            .last()
            .expect("trace is never empty");
        let u_inv: Vec<Letter> = u.inverse().into_letters();
        let mut rounds = 0;
        let cycle = loop {
            let (b, s) = match self.walk_cycle(&u, start) {
                Walk::Closed(orbit) => break orbit,
                Walk::Stuck { point, index } => (point, index),
            };
            rounds += 1;
            if rounds > CLOSE_ROUNDS {
                return Err(ForcingError::Exhausted(CLOSE_ROUNDS));
            }
            let (c, l) = match self.walk_cycle(&u_inv, start) {
                Walk::Stuck { point, index } => (point, k - 1 - index),
                Walk::Closed(_) => unreachable!("forward walk is stuck"),
            };
            let route = (l + k - s) % k + 1;
            let (us, ul) = (&u[s], &u[l]);
            let avoid: BTreeSet<i64> = [a, start, b, c].into();
            if route == 1 {
                self.define(us, b, c)?;
            } else if b == c && us.generator == ul.generator && us.inverse != ul.inverse {
                // both ends would claim the same slot; push b one step on
                let f = self.fresh_isolated(margin, &avoid);
                self.define(us, b, f)?;
            } else {
                let d1 = self.fresh_isolated(margin, &avoid);
                self.define(us, b, d1)?;
                let middle: Vec<Letter> = (1..route - 1).map(|i| u[(s + i) % k].clone()).collect();
                let d2 = *self
                    .walk_define(&middle, d1, margin, &avoid)?
                    .last()
                    .expect("trace is never empty");
                self.define(ul, d2, c)?;
            }
        };
        let back = conj.inverse();
        for &y in &cycle {
            self.walk_define(&back, y, margin, &BTreeSet::new())?;
        }
        let mut orbit = vec![a];
        let mut x = evaluate(w, self, a)?;
        while x != a {
            orbit.push(x);
            x = evaluate(w, self, x)?;
        }
        Ok(self.finish(Witness::FiniteOrbit {
            word: w.clone(),
            orbit,
        }))
    }

    /// The trace of `a` under `w` on defined data.
    pub fn trace(&self, w: &Word, a: i64) -> Result<crate::words::Trace, crate::words::Stuck> {
        trace(w, self, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::{Window, complete};
    use crate::words::{Action, Generator, GeneratorAssignment};
    use crate::permutation::FinPerm;

    fn assignment(radius: u32) -> PartialAssignment {
        PartialAssignment::new(
            Generator::new("sigma"),
            [Generator::new("tau1"), Generator::new("tau2")],
            Window::new(radius),
        )
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn finalize(p: &PartialAssignment) -> GeneratorAssignment {
        let mut g: GeneratorAssignment = p
            .tables()
            .iter()
            .map(|(g, t)| (g.clone(), complete(t.clone())))
            .collect();
        g.insert(p.sigma().clone(), FinPerm::Shift(1));
        g
    }

    #[test]
    fn nontrivial_single_letter() {
        let mut p = assignment(1);
        let f = p.force_nontrivial(&w("tau1")).unwrap();
        assert_eq!(f.inserted.len(), 1);
        assert_eq!(
            f.witness,
            Witness::Nontrivial {
                word: w("tau1"),
                point: 2,
                image: -2
            }
        );
        f.witness.replay(&p).unwrap();
    }

    #[test]
    fn nontrivial_sigma_power_is_direct() {
        let mut p = assignment(1);
        let f = p.force_nontrivial(&w("sigma^5")).unwrap();
        assert!(f.inserted.is_empty());
        assert_eq!(
            f.witness,
            Witness::Nontrivial {
                word: w("sigma^5"),
                point: 0,
                image: 5
            }
        );
    }

    #[test]
    fn nontrivial_commutator() {
        let mut p = assignment(1);
        let v = w("tau1 sigma ~tau1 ~sigma");
        let f = p.force_nontrivial(&v).unwrap();
        assert_eq!(f.inserted.len(), 2);
        f.witness.replay(&p).unwrap();
        f.witness.replay(&finalize(&p)).unwrap();
    }

    #[test]
    fn mapping_example() {
        let mut p = assignment(1);
        let f = p.force_mapping(&[0], &[4]).unwrap();
        assert_eq!(f.inserted, vec![super::super::Insertion(Generator::new("tau1"), 2, 6)]);
        match &f.witness {
            Witness::Mapping { word, shift, .. } => {
                assert_eq!(*shift, 2);
                assert_eq!(*word, w("sigma^2 tau1 sigma^-2"));
                assert_eq!(trace(word, &p, 0).unwrap().points, vec![0, 1, 2, 6, 5, 4]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mapping_identity_and_swap() {
        let mut p = assignment(1);
        let f = p.force_mapping(&[3], &[3]).unwrap();
        assert_eq!(f.inserted.len(), 1);
        f.witness.replay(&p).unwrap();
        let f = p.force_mapping(&[0, 1], &[1, 0]).unwrap();
        assert_eq!(f.inserted.len(), 2);
        f.witness.replay(&finalize(&p)).unwrap();
        assert!(p.force_mapping(&[0, 0], &[1, 2]).is_err());
        assert!(p.force_mapping(&[0], &[1, 2]).is_err());
    }

    #[test]
    fn long_orbit_examples() {
        let mut p = assignment(1);
        let f = p.force_long_orbit(&w("tau1"), 3).unwrap();
        assert_eq!(f.inserted.len(), 2);
        match &f.witness {
            Witness::LongOrbit { chain, .. } => assert_eq!(chain.len(), 3),
            other => panic!("{other:?}"),
        }
        f.witness.replay(&p).unwrap();

        let f = p.force_long_orbit(&w("tau2"), 1).unwrap();
        assert!(f.inserted.is_empty());

        let mut p = assignment(1);
        let f = p.force_long_orbit(&w("sigma tau1 ~sigma"), 2).unwrap();
        assert_eq!(f.inserted.len(), 1);
        f.witness.replay(&finalize(&p)).unwrap();
        assert!(p.force_long_orbit(&w("tau1 sigma ~tau1"), 2).is_err());
    }

    #[test]
    fn finite_orbit_degenerate_route() {
        let mut p = assignment(1);
        let f = p.force_finite_orbit(&w("tau1"), 0).unwrap();
        assert_eq!(f.inserted, vec![super::super::Insertion(Generator::new("tau1"), 0, 0)]);
        assert_eq!(
            f.witness,
            Witness::FiniteOrbit {
                word: w("tau1"),
                orbit: vec![0]
            }
        );
    }

    #[test]
    fn finite_orbit_already_closed() {
        let mut p = assignment(1);
        let t = Generator::new("tau1");
        p.insert(&t, 0, 1).unwrap();
        p.insert(&t, 1, 0).unwrap();
        p.take_journal();
        let f = p.force_finite_orbit(&w("tau1"), 0).unwrap();
        assert!(f.inserted.is_empty());
        assert_eq!(
            f.witness,
            Witness::FiniteOrbit {
                word: w("tau1"),
                orbit: vec![0, 1]
            }
        );
    }

    #[test]
    fn finite_orbit_mixed_word_closes() {
        let mut p = assignment(1);
        let v = w("tau1 sigma");
        let f = p.force_finite_orbit(&v, 0).unwrap();
        let fin = finalize(&p);
        f.witness.replay(&fin).unwrap();
        let report =
            crate::permutation::orbit_structure(&v, &fin, Window::new(0), 1000).unwrap();
        assert!(report.all_finite());
    }

    #[test]
    fn finite_orbit_after_long_orbit_keeps_the_chain() {
        let mut p = assignment(2);
        let v = w("sigma tau2 ~sigma ~tau2");
        let chain = match p.force_long_orbit(&v, 6).unwrap().witness {
            Witness::LongOrbit { chain, .. } => chain,
            other => panic!("{other:?}"),
        };
        let f = p.force_finite_orbit(&v, chain[0]).unwrap();
        match &f.witness {
            Witness::FiniteOrbit { orbit, .. } => {
                assert!(orbit.len() >= 6);
                assert!(chain.iter().all(|c| orbit.contains(c)));
            }
            other => panic!("{other:?}"),
        }
        f.witness.replay(&finalize(&p)).unwrap();
    }

    #[test]
    fn conjugated_word_closes_through_the_conjugator() {
        let mut p = assignment(1);
        let v = w("tau2 tau1 sigma ~tau2");
        let f = p.force_finite_orbit(&v, 0).unwrap();
        f.witness.replay(&p).unwrap();
        f.witness.replay(&finalize(&p)).unwrap();
    }

    #[test]
    fn unknown_generators_are_rejected() {
        let mut p = assignment(0);
        assert!(matches!(
            p.force_nontrivial(&w("rho")),
            Err(ForcingError::UnknownGenerator(_))
        ));
        assert!(matches!(p.force_nontrivial(&Word::identity()), Err(ForcingError::EmptyWord)));
        let _ = p.step(&Letter::positive(Generator::new("sigma")), 0);
    }
}
