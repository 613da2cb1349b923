//! The defining relations checked as identities between normal forms.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::klr::{Kernel, KlrElement};
use crate::params::{AlgebraParams, Residue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Y(usize),
    Psi(usize),
}

/// `g_1 ⋯ g_k e_i` in normal form.
pub fn word(k: &Kernel, gens: &[Gen], bottom: &[Residue]) -> Result<KlrElement> {
    let mut top = bottom.to_vec();
    for g in gens.iter().rev() {
        if let Gen::Psi(r) = g {
            top.swap(r - 1, *r);
        }
    }
    let mut x = KlrElement::idempotent(&top);
    for g in gens {
        x = match g {
            Gen::Y(r) => k.times_y(&x, *r)?,
            Gen::Psi(r) => k.times_psi(&x, *r)?,
        };
    }
    Ok(x)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub e: usize,
    pub n: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

pub fn all_sequences(n: usize, e: usize) -> Vec<Vec<Residue>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..e as Residue).map(move |r| {
                    let mut t = s.clone();
                    t.push(r);
                    t
                })
            })
            .collect();
    }
    out
}

/// Checks R1–R5 in `H_n` for every residue sequence and every admissible index.
pub fn check_relations(e: usize, n: usize) -> Result<RelationReport> {
    let k = Kernel::new(e);
    let mut rep = RelationReport {
        e,
        n,
        ..Default::default()
    };
    let seqs = all_sequences(n, e);
    let w = |g: &[Gen], i: &[Residue]| word(&k, g, i);
    let up = |a: Residue| (a + 1) % e as Residue;
    let down = |a: Residue| (a + e as Residue - 1) % e as Residue;
    for (ii, i) in seqs.iter().enumerate() {
        let ei = KlrElement::idempotent(i);
        // R1
        for j in [&seqs[(ii + 1) % seqs.len()], i] {
            let ej = KlrElement::idempotent(j);
            let want = if i == j { ei.clone() } else { KlrElement::zero(n) };
            rep.check(k.multiply(&ei, &ej)? == want, || format!("R1 e_{i:?} e_{j:?}"));
        }
        for r in 1..=n {
            rep.check(k.y_times(r, &ei)? == k.times_y(&ei, r)?, || format!("R1 y_{r} e_{i:?}"));
            for s in 1..=n {
                rep.check(w(&[Gen::Y(r), Gen::Y(s)], i)? == w(&[Gen::Y(s), Gen::Y(r)], i)?, || {
                    format!("R1 y_{r} y_{s} e_{i:?}")
                });
            }
        }
        for r in 1..n {
            let psi = w(&[Gen::Psi(r)], i)?;
            let mut si = i.clone();
            si.swap(r - 1, r);
            let esi = KlrElement::idempotent(&si);
            rep.check(k.multiply(&esi, &psi)? == psi, || format!("R1 ψ_{r} e_{i:?}"));
            if si != *i {
                rep.check(k.multiply(&ei, &psi)?.is_empty(), || format!("R1 e ψ_{r} e_{i:?}"));
            }
            // R2
            for s in 1..=n {
                if s != r && s != r + 1 {
                    rep.check(w(&[Gen::Psi(r), Gen::Y(s)], i)? == w(&[Gen::Y(s), Gen::Psi(r)], i)?, || {
                        format!("R2 ψ_{r} y_{s} e_{i:?}")
                    });
                }
            }
            for s in 1..n {
                if r.abs_diff(s) > 1 {
                    rep.check(
                        w(&[Gen::Psi(r), Gen::Psi(s)], i)? == w(&[Gen::Psi(s), Gen::Psi(r)], i)?,
                        || format!("R2 ψ_{r} ψ_{s} e_{i:?}"),
                    );
                }
            }
            // R3
            let same = i[r - 1] == i[r];
            let delta = if same { ei.clone() } else { KlrElement::zero(n) };
            rep.check(
                w(&[Gen::Y(r), Gen::Psi(r)], i)? == w(&[Gen::Psi(r), Gen::Y(r + 1)], i)?.sub(&delta),
                || format!("R3a r={r} e_{i:?}"),
            );
            rep.check(
                w(&[Gen::Y(r + 1), Gen::Psi(r)], i)? == w(&[Gen::Psi(r), Gen::Y(r)], i)?.add(&delta),
                || format!("R3b r={r} e_{i:?}"),
            );
            // R4
            let sq = w(&[Gen::Psi(r), Gen::Psi(r)], i)?;
            let (a, b) = (i[r - 1], i[r]);
            let yr = w(&[Gen::Y(r)], i)?;
            let yr1 = w(&[Gen::Y(r + 1)], i)?;
            let want = if a == b {
                KlrElement::zero(n)
            } else if b == up(a) {
                yr1.sub(&yr)
            } else if b == down(a) {
                yr.sub(&yr1)
            } else {
                ei.clone()
            };
            rep.check(sq == want, || format!("R4 r={r} e_{i:?}"));
        }
        // R5
        for r in 1..n.saturating_sub(1) {
            let lhs = w(&[Gen::Psi(r), Gen::Psi(r + 1), Gen::Psi(r)], i)?;
            let rhs = w(&[Gen::Psi(r + 1), Gen::Psi(r), Gen::Psi(r + 1)], i)?;
            let (a, b, c) = (i[r - 1], i[r], i[r + 1]);
            let want = if a == c && a == up(b) {
                rhs.sub(&ei)
            } else if a == c && a == down(b) {
                rhs.add(&ei)
            } else {
                rhs
            };
            rep.check(lhs == want, || format!("R5 r={r} e_{i:?}"));
        }
    }
    Ok(rep)
}

/// Checks `y_1^{#{m : σ_m ≡ i_1}} e_i = 0` in the cyclotomic quotient while it survives in `H_n`.
pub fn check_cyclotomic(p: &AlgebraParams) -> Result<RelationReport> {
    let k = Kernel::cyclotomic(p);
    let free = Kernel::new(p.e);
    let mut rep = RelationReport {
        e: p.e,
        n: p.n,
        ..Default::default()
    };
    for i in all_sequences(p.n, p.e) {
        let a = p
            .sigma
            .iter()
            .filter(|s| s.rem_euclid(p.e as i64) as Residue == i[0])
            .count();
        let gens = vec![Gen::Y(1); a];
        let ei = KlrElement::idempotent(&i);
        let x = k.multiply(&word(&k, &gens, &i)?, &ei)?;
        rep.check(x.is_empty(), || format!("cyclotomic e_{i:?}"));
        rep.check(!word(&free, &gens, &i)?.is_empty(), || format!("free y_1^{a} e_{i:?}"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_small() {
        for e in [3, 4] {
            let r = check_relations(e, 3).unwrap();
            assert!(r.passed(), "{:?}", &r.failures[..r.failures.len().min(5)]);
            assert!(r.checked > 0);
        }
        let p = AlgebraParams::new(3, vec![0, 1], vec![1, 1], 3).unwrap();
        let c = check_cyclotomic(&p).unwrap();
        assert!(c.passed(), "{:?}", c.failures);
    }
}
