//! The truncation `f_{n,σ}`, the generators spot/fork/hex/com/adj, rex moves,
//! the elements `c^S_P c^P_T` and the spanning check.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cellular::CellularBasis;
use crate::combinatorics::Multipartition;
use crate::error::{Error, Result};
use crate::geometry::{Geometry, Letter, Side};
use crate::klr::{Kernel, KlrElement};
use crate::lightleaves::{coordinate_degree, upsilon, upsilon_vector, PathVector};
use crate::linalg::{determinant_field, Field, Solver};
use crate::paths::{block_path, block_sequences, concat_blocks, step_degree, std_n_sigma, Block, BlockPath, Path};
use crate::params::Residue;
use crate::quotient::Quotient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorKind {
    IdempotentAlpha,
    IdempotentEmpty,
    Spot,
    Fork,
    Hex,
    Com,
    Adj,
}

impl GeneratorKind {
    pub const MOVES: [GeneratorKind; 5] = [
        GeneratorKind::Spot,
        GeneratorKind::Fork,
        GeneratorKind::Hex,
        GeneratorKind::Com,
        GeneratorKind::Adj,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::IdempotentAlpha => "idempotent-alpha",
            GeneratorKind::IdempotentEmpty => "idempotent-empty",
            GeneratorKind::Spot => "spot",
            GeneratorKind::Fork => "fork",
            GeneratorKind::Hex => "hex",
            GeneratorKind::Com => "com",
            GeneratorKind::Adj => "adj",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        [
            GeneratorKind::IdempotentAlpha,
            GeneratorKind::IdempotentEmpty,
            GeneratorKind::Spot,
            GeneratorKind::Fork,
            GeneratorKind::Hex,
            GeneratorKind::Com,
            GeneratorKind::Adj,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::Parse(format!("unknown generator {s:?}")))
    }
}

/// A generator family member; `roots` index `Π` as in `Letter::Pi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorTag {
    pub kind: GeneratorKind,
    pub roots: Vec<usize>,
}

impl fmt::Display for GeneratorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.roots.iter().map(|t| t.to_string()).collect();
        write!(f, "{}[{}]", self.kind.name(), r.join(","))
    }
}

/// A generator as a replacement of the block string `bottom` by `top`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalMove {
    pub tag: GeneratorTag,
    pub top: Vec<Block>,
    pub bottom: Vec<Block>,
}

fn adjacent(h: usize, t: usize, u: usize) -> bool {
    h >= 3 && t != u && ((t + 1) % h == u || (u + 1) % h == t)
}

fn commuting(h: usize, t: usize, u: usize) -> bool {
    h >= 4 && t != u && !adjacent(h, t, u)
}

/// The top and bottom block strings of a generator.
pub fn generator_blocks(g: &Geometry, tag: &GeneratorTag) -> Result<LocalMove> {
    let h = g.h;
    let bad = || Error::Invalid(format!("invalid generator {tag}"));
    let b = |t: usize| -> Result<usize> { Ok(g.b_distance(Letter::Pi(t))? as usize) };
    let r = &tag.roots;
    if r.iter().any(|&t| t >= h) {
        return Err(bad());
    }
    let sun = |t: usize| -> Result<Vec<Block>> { Ok(vec![Block::Empty; b(t)?]) };
    let (top, bottom) = match (tag.kind, r.as_slice()) {
        (GeneratorKind::IdempotentAlpha, &[t]) => (vec![Block::Alpha(t)], vec![Block::Alpha(t)]),
        (GeneratorKind::IdempotentEmpty, &[]) => (vec![Block::Empty], vec![Block::Empty]),
        (GeneratorKind::Spot, &[t]) => (sun(t)?, vec![Block::Flat(t)]),
        (GeneratorKind::Fork, &[t]) => {
            let mut top = sun(t)?;
            top.push(Block::Alpha(t));
            (top, vec![Block::Alpha(t), Block::Flat(t)])
        }
        (GeneratorKind::Adj, &[t]) => (
            vec![Block::Alpha(t), Block::Empty],
            vec![Block::Empty, Block::Alpha(t)],
        ),
        (GeneratorKind::Com, &[t, u]) if commuting(h, t, u) => (
            vec![Block::Alpha(t), Block::Alpha(u)],
            vec![Block::Alpha(u), Block::Alpha(t)],
        ),
        (GeneratorKind::Hex, &[t, u]) if adjacent(h, t, u) => {
            let (bt, bu) = (b(t)?, b(u)?);
            let aba = vec![Block::Alpha(t), Block::Alpha(u), Block::Alpha(t)];
            let bab = vec![Block::Alpha(u), Block::Alpha(t), Block::Alpha(u)];
            if bt >= bu {
                let mut bottom = vec![Block::Empty; bt - bu];
                bottom.extend(bab);
                (aba, bottom)
            } else {
                let mut top = vec![Block::Empty; bu - bt];
                top.extend(aba);
                (top, bab)
            }
        }
        _ => return Err(bad()),
    };
    Ok(LocalMove {
        tag: tag.clone(),
        top,
        bottom,
    })
}

/// All members of the chosen move families (both hex orientations, com for `t < u`).
pub fn local_moves(g: &Geometry, kinds: &[GeneratorKind]) -> Result<Vec<LocalMove>> {
    let h = g.h;
    let mut tags = Vec::new();
    for &k in kinds {
        match k {
            GeneratorKind::Spot | GeneratorKind::Fork | GeneratorKind::Adj => {
                tags.extend((0..h).map(|t| GeneratorTag { kind: k, roots: vec![t] }))
            }
            GeneratorKind::Hex => {
                for t in 0..h {
                    for u in 0..h {
                        if adjacent(h, t, u) {
                            tags.push(GeneratorTag { kind: k, roots: vec![t, u] });
                        }
                    }
                }
            }
            GeneratorKind::Com => {
                for t in 0..h {
                    for u in t + 1..h {
                        if commuting(h, t, u) {
                            tags.push(GeneratorTag { kind: k, roots: vec![t, u] });
                        }
                    }
                }
            }
            _ => {}
        }
    }
    tags.iter().map(|t| generator_blocks(g, t)).collect()
}

/// The generator placed at the origin: `Υ^{top}_{bottom}` on the two block paths.
pub fn make_generator(k: &Kernel, g: &Geometry, tag: &GeneratorTag) -> Result<KlrElement> {
    let m = generator_blocks(g, tag)?;
    let top = concat_blocks(g, &m.top)?;
    let bottom = concat_blocks(g, &m.bottom)?;
    upsilon(k, g, &top, &bottom)
}

/// `f_{n,σ} = Σ e_S` over the distinct residue sequences of `Std_{n,σ}`.
pub fn truncation_residues(g: &Geometry, n: usize, cap: usize) -> Result<Vec<Vec<Residue>>> {
    if g.h == 0 || !n.is_multiple_of(g.h) {
        return Err(Error::Invalid(format!("h = {} does not divide n = {n}", g.h)));
    }
    crate::paths::truncation_residues(g, n, cap)
}

pub fn truncation_idempotent(g: &Geometry, n: usize, cap: usize) -> Result<KlrElement> {
    let mut f = KlrElement::zero(n);
    for r in truncation_residues(g, n, cap)? {
        f = f.add(&KlrElement::idempotent(&r));
    }
    Ok(f)
}

/// `dim f𝓗f`: tableaux basis elements whose two residue sequences both lie in the truncation.
pub fn truncated_dimension<F: Field>(cb: &CellularBasis<F>, residues: &[Vec<Residue>]) -> Result<usize> {
    let set: HashSet<&Vec<Residue>> = residues.iter().collect();
    let p = cb.params();
    let mut total = 0;
    for ts in &cb.tableaux {
        let a = ts
            .iter()
            .filter(|t| set.contains(&t.residue_sequence(p)))
            .count();
        total += a * a;
    }
    Ok(total)
}

/// A local move placed inside a block string, as full paths.
#[derive(Clone, Debug)]
pub struct Placement {
    pub tag: GeneratorTag,
    pub position: usize,
    pub top: BlockPath,
    pub bottom: BlockPath,
}

fn replace(blocks: &[Block], at: usize, len: usize, with: &[Block]) -> Vec<Block> {
    let mut out = blocks[..at].to_vec();
    out.extend_from_slice(with);
    out.extend_from_slice(&blocks[at + len..]);
    out
}

/// Every placement of a move whose two full paths are dominant.
pub fn placements(g: &Geometry, seqs: &[BlockPath], moves: &[LocalMove]) -> Result<Vec<Placement>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for bp in seqs {
        for mv in moves {
            let l = mv.bottom.len();
            for at in 0..=bp.blocks.len().saturating_sub(l) {
                if bp.blocks.len() < l || bp.blocks[at..at + l] != mv.bottom[..] {
                    continue;
                }
                let nb = replace(&bp.blocks, at, l, &mv.top);
                let path = concat_blocks(g, &nb)?;
                if !path.is_dominant(g) {
                    continue;
                }
                if !seen.insert((path.clone(), bp.path.clone())) {
                    continue;
                }
                let shape = path.shape(g).ok_or(Error::NotStandard)?;
                out.push(Placement {
                    tag: mv.tag.clone(),
                    position: at,
                    top: BlockPath {
                        blocks: nb,
                        path,
                        shape,
                    },
                    bottom: bp.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SpanningOptions {
    /// Move families left out (the negative control drops spot).
    pub drop: Vec<GeneratorKind>,
    /// Maximal product length; `None` means `2·(n/h)`.
    pub max_rounds: Option<usize>,
    pub cap: usize,
}

impl Default for SpanningOptions {
    fn default() -> Self {
        SpanningOptions {
            drop: Vec::new(),
            max_rounds: None,
            cap: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningReport {
    pub n: usize,
    pub dropped: Vec<String>,
    pub generator_counts: BTreeMap<String, usize>,
    pub idempotents: usize,
    pub rounds: usize,
    pub max_rounds: usize,
    pub span_dim: usize,
    pub target_dim: usize,
    pub saturated: bool,
}

/// Saturates the span of products of generators in context against `dim f𝓗f`.
pub fn spanning_check<F: Field>(
    cb: &CellularBasis<F>,
    g: &Geometry,
    opts: &SpanningOptions,
) -> Result<SpanningReport> {
    let q = &cb.quotient;
    let n = q.params().n;
    let residues = truncation_residues(g, n, opts.cap)?;
    let target = truncated_dimension(cb, &residues)?;
    let kinds: Vec<GeneratorKind> = GeneratorKind::MOVES
        .into_iter()
        .filter(|k| !opts.drop.contains(k))
        .collect();
    let moves = local_moves(g, &kinds)?;
    let seqs = block_sequences(g, n, opts.cap)?;
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut gens = Vec::new();
    for pl in placements(g, &seqs, &moves)? {
        let x = upsilon(q.kernel(), g, &pl.top.path, &pl.bottom.path)?;
        if x.is_empty() {
            continue;
        }
        *counts.entry(pl.tag.kind.name().to_string()).or_default() += 1;
        gens.push(q.kernel().star(&x));
        gens.push(x);
    }
    let max_rounds = opts.max_rounds.unwrap_or(2 * n / g.h.max(1));
    let mut solver = Solver::new(q.ctx());
    let mut frontier = Vec::new();
    for r in &residues {
        let e = KlrElement::idempotent(r);
        if solver.insert(&q.coordinates(&e)?) {
            frontier.push(e);
        }
    }
    let idempotents = solver.rank();
    let mut rounds = 0;
    while !frontier.is_empty() && solver.rank() < target && rounds < max_rounds {
        rounds += 1;
        let mut next = Vec::new();
        for x in &frontier {
            for y in &gens {
                let z = q.multiply(x, y)?;
                if z.is_empty() {
                    continue;
                }
                if solver.insert(&q.coordinates(&z)?) {
                    next.push(z);
                }
            }
        }
        frontier = next;
    }
    let span_dim = solver.rank();
    Ok(SpanningReport {
        n,
        dropped: opts.drop.iter().map(|k| k.name().to_string()).collect(),
        generator_counts: counts,
        idempotents,
        rounds,
        max_rounds,
        span_dim,
        target_dim: target,
        saturated: span_dim == target,
    })
}

/// How a block meets the `α`-wall of the alcove it starts in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockClass {
    /// `P_α^♭` at an upper wall.
    U0,
    /// `P_α` at an upper wall.
    U1,
    /// `P_α` at a lower wall.
    D0,
    /// `P_α^♭` at a lower wall.
    D1,
}

impl BlockClass {
    pub fn degree(&self) -> i64 {
        match self {
            BlockClass::U0 => 1,
            BlockClass::U1 | BlockClass::D0 => 0,
            BlockClass::D1 => -1,
        }
    }
}

/// Classifies block `i` of a block path, or `None` for `P_∅`.
pub fn classify_block(g: &Geometry, bp: &BlockPath, i: usize) -> Result<Option<BlockClass>> {
    let t = match bp.blocks[i] {
        Block::Alpha(t) | Block::Flat(t) => t,
        Block::Empty => return Ok(None),
    };
    let start = bp.blocks[..i]
        .iter()
        .map(|b| block_path(g, *b).map(|p| p.len()))
        .sum::<Result<usize>>()?;
    let x = bp.path.point(g, start);
    let w = g.alcove_of(&x)?;
    let (_, root, level) = g
        .walls_of(&w)
        .into_iter()
        .find(|(l, _, _)| *l == Letter::Pi(t))
        .ok_or(Error::NotSimple)?;
    let upper = g.hyperplane_side(&x, &root, level) == Side::Below;
    Ok(Some(match (upper, bp.blocks[i]) {
        (true, Block::Flat(_)) => BlockClass::U0,
        (true, _) => BlockClass::U1,
        (false, Block::Alpha(_)) => BlockClass::D0,
        (false, _) => BlockClass::D1,
    }))
}

/// Degree contributed by the steps of block `i`.
pub fn block_degree(g: &Geometry, bp: &BlockPath, i: usize) -> Result<i64> {
    let start = bp.blocks[..i]
        .iter()
        .map(|b| block_path(g, *b).map(|p| p.len()))
        .sum::<Result<usize>>()?;
    let len = block_path(g, bp.blocks[i])?.len();
    let pts = bp.path.points(g);
    Ok((start..start + len)
        .map(|k| step_degree(g, &pts[k], &pts[k + 1]))
        .sum())
}

fn word_blocks(w: &[Letter]) -> Vec<Block> {
    w.iter()
        .map(|l| match l {
            Letter::Pi(t) => Block::Alpha(*t),
            Letter::Empty => Block::Empty,
        })
        .collect()
}

fn blocks_word(b: &[Block]) -> Option<Vec<Letter>> {
    b.iter()
        .map(|x| match x {
            Block::Alpha(t) => Some(Letter::Pi(*t)),
            Block::Empty => Some(Letter::Empty),
            Block::Flat(_) => None,
        })
        .collect()
}

/// Shortest chain of hex/com/adj moves between two enriched words through dominant paths.
pub fn rex_search(g: &Geometry, from: &[Letter], to: &[Letter], cap: usize) -> Result<Vec<Vec<Letter>>> {
    let kinds = [GeneratorKind::Hex, GeneratorKind::Com, GeneratorKind::Adj];
    let mut moves = Vec::new();
    for m in local_moves(g, &kinds)? {
        moves.push((m.bottom.clone(), m.top.clone()));
        moves.push((m.top, m.bottom));
    }
    let start = word_blocks(from);
    let goal = word_blocks(to);
    let mut prev: HashMap<Vec<Block>, Option<Vec<Block>>> = HashMap::new();
    prev.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        if w == goal {
            let mut chain = vec![w.clone()];
            let mut cur = w;
            while let Some(Some(p)) = prev.get(&cur) {
                chain.push(p.clone());
                cur = p.clone();
            }
            chain.reverse();
            return Ok(chain.iter().filter_map(|b| blocks_word(b)).collect());
        }
        let mut nbrs = BTreeSet::new();
        for (from_pat, to_pat) in &moves {
            let l = from_pat.len();
            for at in 0..=w.len().saturating_sub(l) {
                if w.len() >= l && w[at..at + l] == from_pat[..] {
                    nbrs.insert(replace(&w, at, l, to_pat));
                }
            }
        }
        for nw in nbrs {
            if prev.contains_key(&nw) || !concat_blocks(g, &nw)?.is_dominant(g) {
                continue;
            }
            if prev.len() > cap {
                return Err(Error::Budget(format!("rex search exceeded {cap} words")));
            }
            prev.insert(nw.clone(), Some(w.clone()));
            queue.push_back(nw);
        }
    }
    Err(Error::Invalid("words are not related by rex moves".into()))
}

/// `rex^{P_from}_{P_to}` as a product of one-move `Υ` elements.
pub fn rex_move<F: Field>(
    q: &Quotient<F>,
    g: &Geometry,
    from: &[Letter],
    to: &[Letter],
    cap: usize,
) -> Result<KlrElement> {
    let chain = rex_search(g, from, to, cap)?;
    let paths: Vec<Path> = chain
        .iter()
        .map(|w| crate::paths::distinguished_path(g, w))
        .collect::<Result<_>>()?;
    let mut x = KlrElement::idempotent(&paths[0].residues(g)?);
    for w in paths.windows(2) {
        x = q.multiply(&x, &upsilon(q.kernel(), g, &w[0], &w[1])?)?;
    }
    Ok(x)
}

/// Chooses the reduced target `P_ν ∈ Std_{k,σ}(ν)` for each shape.
pub struct ReducedTargets<'a> {
    g: &'a Geometry,
    cap: usize,
    by_len: HashMap<usize, BTreeMap<Multipartition, BlockPath>>,
}

impl<'a> ReducedTargets<'a> {
    pub fn new(g: &'a Geometry, cap: usize) -> Self {
        ReducedTargets {
            g,
            cap,
            by_len: HashMap::new(),
        }
    }

    /// The first reduced member of `Std_{k,σ}(ν)` in block order.
    pub fn get(&mut self, nu: &Multipartition, k: usize) -> Result<BlockPath> {
        if !self.by_len.contains_key(&k) {
            let mut m = BTreeMap::new();
            for bp in std_n_sigma(self.g, k, self.cap)? {
                if bp.path.is_reduced(self.g) {
                    m.entry(bp.shape.clone()).or_insert(bp);
                }
            }
            self.by_len.insert(k, m);
        }
        self.by_len[&k]
            .get(nu)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("no reduced path of shape {nu:?} in the truncation")))
    }
}

/// The reduced path vector realising `c^T_P`: prefixes of `Q ⊗ B` inside each block, the rex
/// move absorbed into the last coefficient of the block.
pub fn ll_vector(g: &Geometry, t: &BlockPath, targets: &mut ReducedTargets) -> Result<PathVector> {
    let mut v = vec![Path::empty()];
    let mut q = Path::empty();
    for b in &t.blocks {
        let bpath = block_path(g, *b)?;
        let k0 = q.len();
        let ext = q.concat_auto(g, &bpath)?;
        for j in k0 + 1..k0 + bpath.len() {
            v.push(Path::new(ext.steps[..j].to_vec()));
        }
        let k = k0 + bpath.len();
        let nu = Path::new(t.path.steps[..k].to_vec())
            .shape(g)
            .ok_or(Error::NotStandard)?;
        q = targets.get(&nu, k)?.path;
        v.push(q.clone());
    }
    Ok(v)
}

/// `c^T_P = Υ^T_{P_T}` for the vector of [`ll_vector`].
pub fn ll_construct<F: Field>(
    q: &Quotient<F>,
    g: &Geometry,
    t: &BlockPath,
    targets: &mut ReducedTargets,
) -> Result<KlrElement> {
    let v = ll_vector(g, t, targets)?;
    upsilon_vector(q, g, &t.path, &v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedBasisReport {
    pub n: usize,
    pub size: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub basis: bool,
    pub homogeneous: bool,
    pub triangular: bool,
    /// Square diagonal blocks against the truncated tableaux basis.
    pub diagonal_square: bool,
    pub diagonal_invertible: bool,
    pub diagonal_units: bool,
    pub ambiguous_factorisations: usize,
    pub class_counts: BTreeMap<String, usize>,
    /// Every classified block has the degree of its class.
    pub class_degrees_match: bool,
}

/// The set `{c^S_P c^P_T}` with its certification inside `f𝓗f`.
pub struct TruncatedBasis {
    /// `(cell, S, T)` with `S`, `T` indices into `paths[cell]`.
    pub labels: Vec<(usize, usize, usize)>,
    pub elements: Vec<KlrElement>,
    pub paths: Vec<Vec<BlockPath>>,
    pub report: TruncatedBasisReport,
}

impl TruncatedBasis {
    pub fn build<F: Field>(cb: &CellularBasis<F>, g: &Geometry, cap: usize) -> Result<Self> {
        let q = &cb.quotient;
        let ctx = q.ctx();
        let n = q.params().n;
        let residues = truncation_residues(g, n, cap)?;
        let rset: HashSet<&Vec<Residue>> = residues.iter().collect();
        let target_dim = truncated_dimension(cb, &residues)?;
        let seqs = block_sequences(g, n, cap)?;
        let mut by_path: BTreeMap<Path, Vec<BlockPath>> = BTreeMap::new();
        for bp in seqs {
            by_path.entry(bp.path.clone()).or_default().push(bp);
        }
        let ambiguous = by_path.values().filter(|v| v.len() > 1).count();
        let mut paths: Vec<Vec<BlockPath>> = vec![Vec::new(); cb.cells.len()];
        for (_, mut fs) in by_path {
            fs.sort_by(|a, b| a.blocks.cmp(&b.blocks));
            let bp = fs.swap_remove(0);
            let c = cb
                .cells
                .iter()
                .position(|l| *l == bp.shape)
                .ok_or_else(|| Error::Invalid(format!("shape {:?} is not a cell", bp.shape)))?;
            paths[c].push(bp);
        }
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        let mut class_ok = true;
        for bp in paths.iter().flatten() {
            for i in 0..bp.blocks.len() {
                if let Some(cl) = classify_block(g, bp, i)? {
                    *counts.entry(format!("{cl:?}")).or_default() += 1;
                    if block_degree(g, bp, i)? != cl.degree() {
                        class_ok = false;
                    }
                }
            }
        }
        let mut targets = ReducedTargets::new(g, cap);
        let mut halves = Vec::new();
        for ps in &paths {
            let hs: Vec<KlrElement> = ps
                .iter()
                .map(|bp| ll_construct(q, g, bp, &mut targets))
                .collect::<Result<_>>()?;
            halves.push(hs);
        }
        let mut labels = Vec::new();
        let mut elements = Vec::new();
        let mut homogeneous = true;
        let mut solver = Solver::new(ctx);
        let mut triangular = true;
        let mut square = true;
        let zero = F::from_i64(0, ctx);
        let mut blocks = Vec::new();
        for (c, hs) in halves.iter().enumerate() {
            let stars: Vec<KlrElement> = hs.iter().map(|x| q.kernel().star(x)).collect();
            let cols: Vec<usize> = cb.tableaux[c]
                .iter()
                .enumerate()
                .filter(|(_, t)| rset.contains(&t.residue_sequence(q.params())))
                .map(|(i, _)| i)
                .collect();
            square &= cols.len() == hs.len();
            let d = cols.len();
            let mut block = vec![vec![zero.clone(); d * d]; hs.len() * hs.len()];
            for (s, x) in hs.iter().enumerate() {
                for (t, y) in stars.iter().enumerate() {
                    let z = q.multiply(x, y)?;
                    let want = paths[c][s].path.degree(g) + paths[c][t].path.degree(g);
                    match coordinate_degree(q, &z)? {
                        Some(Some(dz)) if dz == want => {}
                        _ => homogeneous = false,
                    }
                    solver.insert(&q.coordinates(&z)?);
                    let row = s * hs.len() + t;
                    for (m, coef) in cb.straighten(&z)? {
                        if m.cell > c {
                            triangular = false;
                        } else if m.cell == c {
                            match (cols.iter().position(|&i| i == m.s), cols.iter().position(|&i| i == m.t)) {
                                (Some(a), Some(b)) if row < block.len() => block[row][a * d + b] = coef,
                                _ => square = false,
                            }
                        }
                    }
                    labels.push((c, s, t));
                    elements.push(z);
                }
            }
            blocks.push(block);
        }
        let (mut inv, mut units) = (square, square);
        if square {
            let one = F::from_i64(1, ctx);
            for b in &blocks {
                let det = determinant_field(b, ctx);
                inv &= !det.is_zero();
                units &= det == one || det == one.neg();
            }
        }
        let rank = solver.rank();
        let report = TruncatedBasisReport {
            n,
            size: elements.len(),
            target_dim,
            rank,
            basis: rank == target_dim && elements.len() == target_dim,
            homogeneous,
            triangular,
            diagonal_square: square,
            diagonal_invertible: inv,
            diagonal_units: units,
            ambiguous_factorisations: ambiguous,
            class_counts: counts,
            class_degrees_match: class_ok,
        };
        Ok(TruncatedBasis {
            labels,
            elements,
            paths,
            report,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Q;
    use crate::params::AlgebraParams;
    use crate::quotient::QuotientOptions;

    fn setup(e: usize, h: usize, n: usize) -> (CellularBasis<Q>, Geometry) {
        let p = AlgebraParams::new(e, vec![0], vec![h], n).unwrap();
        let g = Geometry::new(&p).unwrap();
        (CellularBasis::build(&p, (), &QuotientOptions::default()).unwrap(), g)
    }

    #[test]
    fn spot_and_fork_degrees() {
        let p = AlgebraParams::new(5, vec![0], vec![3], 9).unwrap();
        let g = Geometry::new(&p).unwrap();
        let k = Kernel::new(5);
        let spot = make_generator(&k, &g, &GeneratorTag { kind: GeneratorKind::Spot, roots: vec![2] }).unwrap();
        assert_eq!(spot.degree(5), Some(1));
        let m = generator_blocks(&g, &GeneratorTag { kind: GeneratorKind::Spot, roots: vec![2] }).unwrap();
        let top = concat_blocks(&g, &m.top).unwrap();
        let bottom = concat_blocks(&g, &m.bottom).unwrap();
        assert_eq!(top.residues(&g).unwrap(), vec![0, 1, 2, 4, 0, 1, 3, 4, 0]);
        assert_eq!(bottom.residues(&g).unwrap(), vec![0, 1, 4, 0, 3, 4, 2, 1, 0]);
        let p = AlgebraParams::new(5, vec![0], vec![3], 18).unwrap();
        let g = Geometry::new(&p).unwrap();
        let fork = make_generator(&k, &g, &GeneratorTag { kind: GeneratorKind::Fork, roots: vec![2] }).unwrap();
        assert_eq!(fork.degree(5), Some(-1));
    }

    #[test]
    fn invalid_tags() {
        let p = AlgebraParams::new(4, vec![0], vec![2], 4).unwrap();
        let g = Geometry::new(&p).unwrap();
        assert!(generator_blocks(&g, &GeneratorTag { kind: GeneratorKind::Hex, roots: vec![0, 1] }).is_err());
        assert!(generator_blocks(&g, &GeneratorTag { kind: GeneratorKind::Com, roots: vec![0, 1] }).is_err());
        assert!(generator_blocks(&g, &GeneratorTag { kind: GeneratorKind::Spot, roots: vec![5] }).is_err());
    }

    #[test]
    fn truncation_is_idempotent() {
        let (cb, g) = setup(4, 2, 4);
        let f = truncation_idempotent(&g, 4, 1000).unwrap();
        assert_eq!(cb.quotient.multiply(&f, &f).unwrap(), cb.quotient.project(&f));
        assert!(truncation_idempotent(&g, 3, 1000).is_err());
    }

    #[test]
    fn classes_have_their_degrees() {
        let p = AlgebraParams::new(5, vec![0], vec![3], 0).unwrap();
        let g = Geometry::new(&p).unwrap();
        for bp in block_sequences(&g, 9, 10_000).unwrap() {
            for i in 0..bp.blocks.len() {
                if let Some(c) = classify_block(&g, &bp, i).unwrap() {
                    assert_eq!(block_degree(&g, &bp, i).unwrap(), c.degree(), "{:?}", bp.blocks);
                }
            }
        }
    }

    #[test]
    fn small_spanning_and_lw() {
        let (cb, g) = setup(4, 2, 4);
        let r = spanning_check(&cb, &g, &SpanningOptions::default()).unwrap();
        assert!(r.saturated, "{r:?}");
        let lw = TruncatedBasis::build(&cb, &g, 10_000).unwrap();
        assert!(lw.report.basis && lw.report.homogeneous, "{:?}", lw.report);
    }

    fn chain_vs_upsilon(g: &Geometry, k: &Kernel, a: &[Letter], b: &[Letter]) -> (usize, bool) {
        let chain = rex_search(g, a, b, 1000).unwrap();
        let ps: Vec<Path> = chain
            .iter()
            .map(|w| crate::paths::distinguished_path(g, w).unwrap())
            .collect();
        let mut x = KlrElement::idempotent(&ps[0].residues(g).unwrap());
        for w in ps.windows(2) {
            x = k.multiply(&x, &upsilon(k, g, &w[0], &w[1]).unwrap()).unwrap();
        }
        let y = upsilon(k, g, &ps[0], ps.last().unwrap()).unwrap();
        (chain.len(), x == y)
    }

    #[test]
    fn rex_composites() {
        use Letter::{Empty, Pi};
        let p = AlgebraParams::new(5, vec![0], vec![3], 18).unwrap();
        let g = Geometry::new(&p).unwrap();
        let k = Kernel::cyclotomic(&p);
        let w = [Pi(2), Pi(0), Pi(1)];
        assert_eq!(chain_vs_upsilon(&g, &k, &w, &w), (1, true));
        let hex = (vec![Pi(2), Pi(0), Pi(1), Pi(0)], vec![Pi(2), Pi(1), Pi(0), Pi(1)]);
        assert_eq!(chain_vs_upsilon(&g, &k, &hex.0, &hex.1), (2, true));
        let adj = (vec![Pi(2), Pi(1), Empty], vec![Empty, Pi(2), Pi(1)]);
        assert_eq!(chain_vs_upsilon(&g, &k, &adj.0, &adj.1), (3, true));
        assert!(rex_search(&g, &[Pi(2), Pi(0)], &[Pi(2), Pi(1)], 1000).is_err());
    }
}
