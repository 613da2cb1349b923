//! Permutations of `{0..n}` stored as image vectors, and the canonical reduced words.
//!
//! A word `a_1 … a_k` (letters 1-based) stands for `s_{a_1} ∘ … ∘ s_{a_k}`.

use std::fmt;

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn inverse(w: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; w.len()];
    for (i, &x) in w.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn length(w: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                inv += 1;
            }
        }
    }
    inv
}

pub fn is_permutation(w: &[usize]) -> bool {
    let mut seen = vec![false; w.len()];
    for &x in w {
        if x >= w.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// The permutation of a word.
pub fn word_to_perm(word: &[usize], n: usize) -> Vec<usize> {
    let mut w = identity(n);
    for &a in word {
        // w ∘ s_a: swap the images of a-1 and a.
        w.swap(a - 1, a);
    }
    w
}

pub fn is_reduced(word: &[usize], n: usize) -> bool {
    length(&word_to_perm(word, n)) == word.len()
}

/// Branching blocks `d_1 … d_n` of `w`: block `p` is `p-1, p-2, …, q` with
/// `q = #{i ≤ p : w(i) ≤ w(p)}`. The concatenation composes to `w⁻¹`.
pub fn branching_blocks(w: &[usize]) -> Vec<Vec<usize>> {
    let n = w.len();
    (1..=n)
        .map(|p| {
            let q = (1..=p).filter(|&i| w[i - 1] <= w[p - 1]).count();
            (q..p).rev().collect()
        })
        .collect()
}

/// The word `d_1 d_2 ⋯ d_n` of [`branching_blocks`].
pub fn branching_word(w: &[usize]) -> Vec<usize> {
    branching_blocks(w).into_iter().flatten().collect()
}

/// The fixed reduced word used for `ψ_π`: the branching word of `π⁻¹`.
///
/// It composes to `π` and is closed under taking prefixes along its last letter.
pub fn canonical_word(pi: &[usize]) -> Vec<usize> {
    branching_word(&inverse(pi))
}

/// Disjoint cycles (1-based) of length at least two.
pub fn cycles(w: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; w.len()];
    let mut out = Vec::new();
    for start in 0..w.len() {
        if seen[start] || w[start] == start {
            continue;
        }
        let mut c = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            c.push(x + 1);
            x = w[x];
        }
        out.push(c);
    }
    out
}

/// Cycle notation wrapper.
pub struct CycleDisplay<'a>(pub &'a [usize]);

impl fmt::Display for CycleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = cycles(self.0);
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

/// All permutations of `n`, in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = identity(n);
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// `w^p_q`: `s_p s_{p+1} ⋯ s_{q-1}` if `p < q`, `s_{p-1} ⋯ s_q` if `p > q`.
pub fn w_word(p: usize, q: usize) -> Vec<usize> {
    if p <= q {
        (p..q).collect()
    } else {
        (q..p).rev().collect()
    }
}
