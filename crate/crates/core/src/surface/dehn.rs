use crate::words::{reduce, Letter, Word};

/// All cyclic permutations of the cyclically reduced relators and their
/// inverses.
pub fn symmetrize(relators: &[Word]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for r in relators {
        let core = r.cyclic_reduce().0;
        for base in [core.clone(), core.inverse()] {
            let letters = base.letters();
            for i in 0..letters.len() {
                let mut rot = letters[i..].to_vec();
                rot.extend_from_slice(&letters[..i]);
                if !out.contains(&rot) {
                    out.push(rot);
                }
            }
        }
    }
    out
}

/// Dehn's algorithm: while some subword is more than half of a
/// symmetrized relator `u v`, replace `u` by `v⁻¹`.
pub fn dehn_reduce(w: &Word, sym: &[Vec<Letter>]) -> Word {
    let mut letters = w.letters().to_vec();
    let longest = sym.iter().map(Vec::len).max().unwrap_or(0);
    let mut i = 0;
    'scan: while i < letters.len() {
        for s in sym {
            let m = letters[i..]
                .iter()
                .zip(s)
                .take_while(|(a, b)| a == b)
                .count();
            if 2 * m > s.len() {
                let replacement = s[m..].iter().rev().map(Letter::inverse);
                letters.splice(i..i + m, replacement);
                letters = reduce(letters).into_letters();
                i = i.saturating_sub(longest);
                continue 'scan;
            }
        }
        i += 1;
    }
    Word::from_letters(letters)
}
