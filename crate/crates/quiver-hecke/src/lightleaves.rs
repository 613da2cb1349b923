//! Branching coefficients, `Υ` elements, reduced path vectors and the light leaves basis.

use std::collections::HashMap;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cellular::{CellLabel, CellularBasis};
use crate::combinatorics::{permutation_between, standard_tableaux, t_lambda, Multipartition};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::klr::{Kernel, KlrElement};
use crate::linalg::{determinant_field, Field};
use crate::paths::Path;
use crate::perm;
use crate::quotient::Quotient;

/// `d_p(S, T) = w^p_q` with its sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingCoeff {
    pub p: usize,
    pub q: usize,
    /// `s_{p−1} ⋯ s_q`, top to bottom.
    pub word: Vec<usize>,
    pub sign: i64,
}

/// Position of each step of `S` among the steps of `T` (0-based).
fn position_map(g: &Geometry, s: &Path, t: &Path) -> Result<Vec<usize>> {
    let (ts, tt) = (s.to_tableau(g)?, t.to_tableau(g)?);
    let w = permutation_between(&ts, &tt)?;
    Ok(perm::inverse(&w))
}

pub fn branching_coeffs(g: &Geometry, s: &Path, t: &Path) -> Result<Vec<BranchingCoeff>> {
    let u = position_map(g, s, t)?;
    let mut above = s.residues(g)?;
    let mut out = Vec::with_capacity(u.len());
    for (idx, word) in perm::branching_blocks(&u).into_iter().enumerate() {
        let p = idx + 1;
        let q = p - word.len();
        let ip = above[p - 1];
        let crossed = (q..p).filter(|&k| above[k - 1] == ip).count();
        for &a in &word {
            above.swap(a - 1, a);
        }
        out.push(BranchingCoeff {
            p,
            q,
            word,
            sign: if crossed % 2 == 0 { 1 } else { -1 },
        });
    }
    Ok(out)
}

/// `d_1(S,T) ⋯ d_n(S,T)`, a reduced word for `w^S_T`, and the total sign.
pub fn upsilon_word(g: &Geometry, s: &Path, t: &Path) -> Result<(Vec<usize>, i64)> {
    let bc = branching_coeffs(g, s, t)?;
    let sign = bc.iter().map(|b| b.sign).product();
    Ok((bc.into_iter().flat_map(|b| b.word).collect(), sign))
}

/// `Υ^S_T = e_S Υ_1(S,T) ⋯ Υ_n(S,T) e_T`.
pub fn upsilon(k: &Kernel, g: &Geometry, s: &Path, t: &Path) -> Result<KlrElement> {
    let (word, sign) = upsilon_word(g, s, t)?;
    let bottom = t.residues(g)?;
    let x = k.word_from_bottom(&word, &bottom)?;
    if let Some((m, _)) = x.terms.iter().next() {
        if m.top() != s.residues(g)? {
            return Err(Error::Invalid("branching word does not connect the frames".into()));
        }
    }
    Ok(x.scale(sign))
}

/// A choice of reduced path `P_{S,k}` for each prefix of `S`, with `P_{S,0}` empty.
pub type PathVector = Vec<Path>;

pub fn check_vector(g: &Geometry, s: &Path, v: &[Path]) -> Result<()> {
    if v.len() != s.len() + 1 {
        return Err(Error::Invalid("path vector has the wrong length".into()));
    }
    for (k, pk) in v.iter().enumerate() {
        let sk = Path::new(s.steps[..k].to_vec());
        if pk.len() != k || pk.shape(g) != sk.shape(g) {
            return Err(Error::Invalid(format!("entry {k} of the path vector has the wrong shape")));
        }
    }
    Ok(())
}

/// `Υ^S_{P_S} = ∏_p Υ^{P_{S,p−1} ⊠ ε_{i_p}}_{P_{S,p}}`, each factor padded by the idempotent of the later steps.
pub fn upsilon_vector<F: Field>(
    q: &Quotient<F>,
    g: &Geometry,
    s: &Path,
    v: &[Path],
) -> Result<KlrElement> {
    check_vector(g, s, v)?;
    let res = s.residues(g)?;
    let n = s.len();
    let mut x = KlrElement::idempotent(&res);
    for p in 1..=n {
        let top = v[p - 1].concat(&Path::new(vec![s.steps[p - 1]]));
        let d = upsilon(q.kernel(), g, &top, &v[p])?;
        let d = d.boxtimes(&KlrElement::idempotent(&res[p..]));
        x = q.multiply(&x, &d)?;
        if x.is_empty() {
            break;
        }
    }
    Ok(x)
}

/// Reduced dominant paths of a shape, sorted.
pub fn reduced_paths(g: &Geometry, lam: &Multipartition) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    for t in standard_tableaux(lam) {
        let p = Path::from_tableau(g, &t)?;
        if p.is_reduced(g) {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

pub fn t_lambda_path(g: &Geometry, lam: &Multipartition) -> Result<Path> {
    Path::from_tableau(g, &t_lambda(lam))
}

/// How `Q_λ` and the path vectors are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VectorPolicy {
    /// `P_{S,k} = t_{Shape(S_{≤k})}`: recovers the tableaux basis.
    Tableau,
    /// `t_μ` at every prefix except the last, which is the smallest reduced path of `λ`.
    ReducedTarget,
    /// The smallest reduced path of every prefix shape.
    ReducedEverywhere,
    /// A seeded random reduced path at each point; `Q_λ` is drawn once per shape.
    Random(u64),
}

impl VectorPolicy {
    pub const ALL: [VectorPolicy; 4] = [
        VectorPolicy::Tableau,
        VectorPolicy::ReducedTarget,
        VectorPolicy::ReducedEverywhere,
        VectorPolicy::Random(0),
    ];

    pub fn name(&self) -> String {
        match self {
            VectorPolicy::Tableau => "tableau".into(),
            VectorPolicy::ReducedTarget => "reduced-target".into(),
            VectorPolicy::ReducedEverywhere => "reduced-everywhere".into(),
            VectorPolicy::Random(seed) => format!("random:{seed}"),
        }
    }

    /// Parses `tableau`, `reduced-target`, `reduced-everywhere` or `random[:seed]`.
    pub fn parse(s: &str, seed: u64) -> Result<Self> {
        match s {
            "tableau" => Ok(VectorPolicy::Tableau),
            "reduced-target" => Ok(VectorPolicy::ReducedTarget),
            "reduced-everywhere" => Ok(VectorPolicy::ReducedEverywhere),
            "random" => Ok(VectorPolicy::Random(seed)),
            _ => match s.strip_prefix("random:").map(str::parse) {
                Some(Ok(k)) => Ok(VectorPolicy::Random(k)),
                _ => Err(Error::Parse(format!("unknown path policy {s:?}"))),
            },
        }
    }
}

/// Memoised choices of reduced paths per shape.
pub struct PathChooser<'a> {
    g: &'a Geometry,
    policy: VectorPolicy,
    reduced: HashMap<Multipartition, Vec<Path>>,
    targets: HashMap<Multipartition, Path>,
    rng: ChaCha8Rng,
}

impl<'a> PathChooser<'a> {
    pub fn new(g: &'a Geometry, policy: VectorPolicy) -> Self {
        let seed = match policy {
            VectorPolicy::Random(s) => s,
            _ => 0,
        };
        PathChooser {
            g,
            policy,
            reduced: HashMap::new(),
            targets: HashMap::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn reduced(&mut self, lam: &Multipartition) -> Result<&Vec<Path>> {
        if !self.reduced.contains_key(lam) {
            let r = reduced_paths(self.g, lam)?;
            if r.is_empty() {
                return Err(Error::Invalid(format!("no reduced path of shape {lam:?}")));
            }
            self.reduced.insert(lam.clone(), r);
        }
        Ok(&self.reduced[lam])
    }

    fn pick(&mut self, lam: &Multipartition, last: bool) -> Result<Path> {
        match (self.policy, last) {
            (VectorPolicy::Tableau, _) | (VectorPolicy::ReducedTarget, false) => {
                t_lambda_path(self.g, lam)
            }
            (VectorPolicy::Random(_), _) => {
                let k = self.reduced(lam)?.len();
                let i = self.rng.random_range(0..k);
                Ok(self.reduced[lam][i].clone())
            }
            _ => Ok(self.reduced(lam)?[0].clone()),
        }
    }

    /// The fixed reduced path `Q_λ`.
    pub fn target(&mut self, lam: &Multipartition) -> Result<Path> {
        if let Some(p) = self.targets.get(lam) {
            return Ok(p.clone());
        }
        let p = self.pick(lam, true)?;
        self.targets.insert(lam.clone(), p.clone());
        Ok(p)
    }

    /// A reduced path vector for `s` terminating at `Q_{Shape(s)}`.
    pub fn vector(&mut self, s: &Path) -> Result<PathVector> {
        let n = s.len();
        let mut v = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let lam = Path::new(s.steps[..k].to_vec())
                .shape(self.g)
                .ok_or(Error::NotStandard)?;
            v.push(if k == n { self.target(&lam)? } else { self.pick(&lam, false)? });
        }
        Ok(v)
    }
}

/// A light leaves basis with its certification against the tableaux basis.
pub struct LightLeavesBasis<F: Field> {
    pub policy: VectorPolicy,
    /// Same indexing as the tableaux basis.
    pub labels: Vec<CellLabel>,
    pub elements: Vec<KlrElement>,
    pub targets: Vec<Path>,
    /// `vectors[cell][s]` is the path vector of the `s`-th tableau.
    pub vectors: Vec<Vec<PathVector>>,
    pub report: LightLeavesReport,
    pub diagonal_determinants: Vec<F>,
    pub target_scalars: Vec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LightLeavesReport {
    pub policy: VectorPolicy,
    pub size: usize,
    pub rank: usize,
    pub full_rank: bool,
    /// No element has a term in a ≻-lower cell.
    pub triangular: bool,
    /// Every diagonal block is invertible.
    pub diagonal_invertible: bool,
    /// Every diagonal block has determinant ±1.
    pub diagonal_units: bool,
    pub homogeneous: bool,
    /// `deg Υ^S_{P_S} = deg S` for every path.
    pub half_degrees_match: bool,
    pub target_scalars_nonzero: bool,
    pub target_scalars: Vec<String>,
}

/// Degree of a quotient element if all its coordinates share one.
pub fn coordinate_degree<F: Field>(q: &Quotient<F>, x: &KlrElement) -> Result<Option<Option<i64>>> {
    let c = q.coordinates(x)?;
    let mut d = None;
    for (i, _) in &c {
        let di = q.coordinate_degree(*i);
        match d {
            None => d = Some(di),
            Some(e) if e != di => return Ok(None),
            _ => {}
        }
    }
    Ok(Some(d))
}

impl<F: Field> LightLeavesBasis<F> {
    pub fn build(cb: &CellularBasis<F>, g: &Geometry, policy: VectorPolicy) -> Result<Self> {
        let q = &cb.quotient;
        let ctx = q.ctx();
        let mut chooser = PathChooser::new(g, policy);
        let mut labels = Vec::new();
        let mut elements = Vec::new();
        let mut targets = Vec::new();
        let mut half_ok = true;
        let mut halves: Vec<Vec<KlrElement>> = Vec::new();
        let mut vectors = Vec::new();
        for (c, lam) in cb.cells.iter().enumerate() {
            targets.push(chooser.target(lam)?);
            let mut hs = Vec::new();
            let mut vs = Vec::new();
            for t in &cb.tableaux[c] {
                let s = Path::from_tableau(g, t)?;
                let v = chooser.vector(&s)?;
                let x = upsilon_vector(q, g, &s, &v)?;
                let want = s.degree(g);
                if coordinate_degree(q, &x)? != Some(Some(want)) {
                    half_ok = false;
                }
                hs.push(x);
                vs.push(v);
            }
            halves.push(hs);
            vectors.push(vs);
        }
        let mut homogeneous = true;
        for (c, hs) in halves.iter().enumerate() {
            let stars: Vec<KlrElement> = hs.iter().map(|x| q.kernel().star(x)).collect();
            for (s, x) in hs.iter().enumerate() {
                for (t, y) in stars.iter().enumerate() {
                    let l = CellLabel { cell: c, s, t };
                    let z = q.multiply(x, y)?;
                    match coordinate_degree(q, &z)? {
                        Some(Some(d)) if d == cb.label_degree(&l) => {}
                        Some(None) => {}
                        _ => homogeneous = false,
                    }
                    labels.push(l);
                    elements.push(z);
                }
            }
        }
        // Change of basis to the tableaux basis.
        let zero = F::from_i64(0, ctx);
        let mut triangular = true;
        let mut blocks: Vec<Vec<Vec<F>>> = cb
            .tableaux
            .iter()
            .map(|ts| vec![vec![zero.clone(); ts.len() * ts.len()]; ts.len() * ts.len()])
            .collect();
        let mut solver = crate::linalg::Solver::new(ctx);
        for (l, x) in labels.iter().zip(&elements) {
            solver.insert(&q.coordinates(x)?);
            let d = cb.tableaux[l.cell].len();
            for (m, coef) in cb.straighten(x)? {
                if m.cell > l.cell {
                    triangular = false;
                } else if m.cell == l.cell {
                    blocks[l.cell][l.s * d + l.t][m.s * d + m.t] = coef;
                }
            }
        }
        let dets: Vec<F> = blocks.iter().map(|b| determinant_field(b, ctx)).collect();
        let one = F::from_i64(1, ctx);
        let diagonal_invertible = dets.iter().all(|d| !d.is_zero());
        let diagonal_units = dets.iter().all(|d| *d == one || *d == one.neg());
        // The scalar k with Υ^{t_λ}_{Q_λ} Υ_{t_λ}^{Q_λ} ≡ k e_{t_λ}.
        let mut scalars = Vec::new();
        let mut scalars_ok = true;
        for (c, lam) in cb.cells.iter().enumerate() {
            let tl = t_lambda_path(g, lam)?;
            let x = upsilon(q.kernel(), g, &tl, &targets[c])?;
            let z = q.multiply(&x, &q.kernel().star(&x))?;
            let mut k = zero.clone();
            for (m, coef) in cb.straighten(&z)? {
                if m.cell > c || (m.cell == c && (m.s, m.t) != (0, 0)) {
                    scalars_ok = false;
                } else if m.cell == c {
                    k = coef;
                }
            }
            if k.is_zero() {
                scalars_ok = false;
            }
            scalars.push(k);
        }
        let rank = solver.rank();
        let report = LightLeavesReport {
            policy,
            size: elements.len(),
            rank,
            full_rank: rank == q.dim() && elements.len() == q.dim(),
            triangular,
            diagonal_invertible,
            diagonal_units,
            homogeneous,
            half_degrees_match: half_ok,
            target_scalars_nonzero: scalars_ok,
            target_scalars: scalars.iter().map(|k| k.to_string()).collect(),
        };
        Ok(LightLeavesBasis {
            policy,
            labels,
            elements,
            targets,
            vectors,
            report,
            diagonal_determinants: dets,
            target_scalars: scalars,
        })
    }
}
