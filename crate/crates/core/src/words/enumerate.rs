use super::{Generator, Letter, Word};

/// All nonempty reduced words of length `≤ max_len`, in length-then-
/// lexicographic order. Letters are ordered by alphabet position, each
/// generator before its inverse.
pub fn enumerate_reduced_words(alphabet: &[Generator], max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = alphabet
        .iter()
        .flat_map(|g| [Letter::positive(g.clone()), Letter::negative(g.clone())])
        .collect();
    let mut out = Vec::new();
    let mut level: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * letters.len());
        for prefix in &level {
            for l in &letters {
                if prefix.last().is_some_and(|last| last.cancels(l)) {
                    continue;
                }
                let mut w = prefix.clone();
                w.push(l.clone());
                next.push(w);
            }
        }
        out.extend(next.iter().cloned().map(Word));
        level = next;
    }
    out
}

/// `2k(2k−1)^{ℓ−1}`, the number of reduced words of length `ℓ ≥ 1` on `k`
/// generators.
pub fn count_reduced_words(k: usize, len: usize) -> usize {
    if len == 0 {
        return 1;
    }
    2 * k * (2 * k - 1).pow(len as u32 - 1)
}
