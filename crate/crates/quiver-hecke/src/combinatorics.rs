//! Boxes, configurations, multipartitions and tableaux.
//!
//! Rows and columns are 1-based, components 0-based, matching `[i, j, m]`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{AlgebraParams, Residue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

impl Node {
    pub const fn new(row: usize, col: usize, comp: usize) -> Self {
        Node { row, col, comp }
    }

    pub fn content(&self, p: &AlgebraParams) -> i64 {
        p.sigma[self.comp] + self.col as i64 - self.row as i64
    }

    pub fn residue(&self, p: &AlgebraParams) -> Residue {
        p.residue(self.content(p))
    }

    /// Checked residue.
    pub fn try_residue(&self, p: &AlgebraParams) -> Result<Residue> {
        if self.comp >= p.ell() {
            return Err(Error::ComponentOutOfRange(self.comp, p.ell()));
        }
        Ok(self.residue(p))
    }

    fn cyl_key(&self) -> (usize, usize, usize) {
        (self.row, self.comp, self.col)
    }

    fn dom_key(&self) -> (usize, usize, usize) {
        (self.comp, self.row, self.col)
    }
}

impl Ord for Node {
    /// The total order used for storage: ascending in `(row, comp, col)`,
    /// so the first node is the ≻-largest.
    fn cmp(&self, other: &Self) -> Ordering {
        self.cyl_key().cmp(&other.cyl_key())
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.row, self.col, self.comp)
    }
}

/// The two box orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoxOrder {
    /// The reverse cylindric order ≻.
    Cyl,
    /// The dominance order ⊳.
    Dom,
}

/// `Greater` means `a` is bigger than `b` in the chosen order.
pub fn compare_boxes(a: &Node, b: &Node, order: BoxOrder) -> Ordering {
    match order {
        BoxOrder::Cyl => b.cyl_key().cmp(&a.cyl_key()),
        BoxOrder::Dom => b.dom_key().cmp(&a.dom_key()),
    }
}

pub fn compare_cyl(a: &Node, b: &Node) -> Ordering {
    compare_boxes(a, b, BoxOrder::Cyl)
}

pub fn compare_dom(a: &Node, b: &Node) -> Ordering {
    compare_boxes(a, b, BoxOrder::Dom)
}

/// A finite set of boxes, kept sorted by [`Node`]'s `Ord`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BoxConfig {
    nodes: Vec<Node>,
}

impl BoxConfig {
    pub fn new(mut nodes: Vec<Node>) -> Result<Self> {
        nodes.sort();
        if nodes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("duplicate box in configuration".into()));
        }
        Ok(BoxConfig { nodes })
    }

    pub fn empty() -> Self {
        BoxConfig { nodes: Vec::new() }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, b: &Node) -> bool {
        self.nodes.binary_search(b).is_ok()
    }

    pub fn with(&self, b: Node) -> Self {
        let mut c = self.clone();
        if let Err(pos) = c.nodes.binary_search(&b) {
            c.nodes.insert(pos, b);
        }
        c
    }

    pub fn without(&self, b: &Node) -> Self {
        let mut c = self.clone();
        if let Ok(pos) = c.nodes.binary_search(b) {
            c.nodes.remove(pos);
        }
        c
    }

    /// Compare two configurations; `Greater` means `self` is bigger.
    ///
    /// For ≻ the ≻-minimal box of the symmetric difference decides (it lies in
    /// the smaller one); for ⊳ the ⊳-maximal box decides (it lies in the bigger one).
    pub fn compare(&self, other: &BoxConfig, order: BoxOrder) -> Ordering {
        let diff: Vec<(Node, bool)> = symmetric_difference(self, other);
        if diff.is_empty() {
            return Ordering::Equal;
        }
        match order {
            BoxOrder::Cyl => {
                let (_, in_self) = diff
                    .iter()
                    .copied()
                    .min_by(|x, y| compare_cyl(&x.0, &y.0))
                    .unwrap();
                if in_self {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            BoxOrder::Dom => {
                let (_, in_self) = diff
                    .iter()
                    .copied()
                    .max_by(|x, y| compare_dom(&x.0, &y.0))
                    .unwrap();
                if in_self {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// The ℓ-multipartition with this Young diagram, if it is one.
    pub fn to_multipartition(&self, ell: usize) -> Option<Multipartition> {
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); ell];
        for b in &self.nodes {
            if b.comp >= ell {
                return None;
            }
        }
        for (m, part) in parts.iter_mut().enumerate() {
            let mut row = 1;
            loop {
                let len = self
                    .nodes
                    .iter()
                    .filter(|b| b.comp == m && b.row == row)
                    .count();
                if len == 0 {
                    break;
                }
                part.push(len);
                row += 1;
            }
        }
        let mp = Multipartition::new(parts).ok()?;
        if mp.to_config() == *self {
            Some(mp)
        } else {
            None
        }
    }

    pub fn residues(&self, p: &AlgebraParams) -> Vec<Residue> {
        self.nodes.iter().map(|b| b.residue(p)).collect()
    }
}

impl fmt::Display for BoxConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.nodes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

fn symmetric_difference(a: &BoxConfig, b: &BoxConfig) -> Vec<(Node, bool)> {
    let mut out = Vec::new();
    for x in &a.nodes {
        if !b.contains(x) {
            out.push((*x, true));
        }
    }
    for x in &b.nodes {
        if !a.contains(x) {
            out.push((*x, false));
        }
    }
    out
}

/// An ℓ-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multipartition {
    pub parts: Vec<Vec<usize>>,
}

impl Multipartition {
    /// Trailing zeros are stripped.
    pub fn new(mut parts: Vec<Vec<usize>>) -> Result<Self> {
        for part in parts.iter_mut() {
            while part.last() == Some(&0) {
                part.pop();
            }
            if part.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Invalid(format!("{part:?} is not a partition")));
            }
        }
        Ok(Multipartition { parts })
    }

    pub fn empty(ell: usize) -> Self {
        Multipartition {
            parts: vec![Vec::new(); ell],
        }
    }

    pub fn ell(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().flatten().sum()
    }

    /// Number of columns of component `m`.
    pub fn columns(&self, m: usize) -> usize {
        self.parts[m].first().copied().unwrap_or(0)
    }

    /// Column lengths of component `m`, i.e. the transpose partition.
    pub fn column_lengths(&self, m: usize) -> Vec<usize> {
        let cols = self.columns(m);
        (1..=cols)
            .map(|c| self.parts[m].iter().filter(|&&r| r >= c).count())
            .collect()
    }

    pub fn to_config(&self) -> BoxConfig {
        let mut nodes = Vec::new();
        for (m, part) in self.parts.iter().enumerate() {
            for (i, &len) in part.iter().enumerate() {
                for j in 1..=len {
                    nodes.push(Node::new(i + 1, j, m));
                }
            }
        }
        BoxConfig::new(nodes).expect("young diagrams have no duplicates")
    }

    /// Membership in `P_h(n)`: at most `h_m` columns in component `m`.
    pub fn in_ph(&self, p: &AlgebraParams) -> bool {
        self.ell() == p.ell() && (0..self.ell()).all(|m| self.columns(m) <= p.h[m])
    }

    /// Parse `"(3,2,1|2,1)"` or `"3,2,1|2,1"` style text; `-` marks an empty component.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split('|')
            .map(|c| {
                let c = c.trim();
                if c.is_empty() || c == "-" {
                    return Ok(Vec::new());
                }
                c.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|e| Error::Parse(format!("{x}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Multipartition::new(parts)
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (m, part) in self.parts.iter().enumerate() {
            if m > 0 {
                write!(f, "|")?;
            }
            if part.is_empty() {
                write!(f, "-")?;
            }
            for (i, x) in part.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, ")")
    }
}

fn partitions_bounded(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions_bounded(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All ℓ-multipartitions of `n`.
pub fn multipartitions(n: usize, ell: usize) -> Vec<Multipartition> {
    fn go(n: usize, ell: usize) -> Vec<Vec<Vec<usize>>> {
        if ell == 0 {
            return if n == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for k in (0..=n).rev() {
            for first in partitions_bounded(k, k) {
                for mut rest in go(n - k, ell - 1) {
                    rest.insert(0, first.clone());
                    out.push(rest);
                }
            }
        }
        out
    }
    go(n, ell)
        .into_iter()
        .map(|parts| Multipartition { parts })
        .collect()
}

/// `P_h(n)` for the parameters' `h`, sorted decreasingly in ≻.
pub fn multipartitions_ph(p: &AlgebraParams, n: usize) -> Vec<Multipartition> {
    let mut v: Vec<Multipartition> = multipartitions(n, p.ell())
        .into_iter()
        .filter(|mp| mp.in_ph(p))
        .collect();
    v.sort_by(|a, b| b.to_config().compare(&a.to_config(), BoxOrder::Cyl));
    v
}

/// Addable and removable boxes, optionally filtered to residue `r`.
pub fn addable_removable(
    cfg: &BoxConfig,
    r: Option<Residue>,
    p: &AlgebraParams,
) -> (Vec<Node>, Vec<Node>) {
    let keep = |b: &Node| r.is_none_or(|r| b.residue(p) == r);
    let rem: Vec<Node> = cfg
        .nodes()
        .iter()
        .filter(|b| {
            !cfg.contains(&Node::new(b.row + 1, b.col, b.comp))
                && !cfg.contains(&Node::new(b.row, b.col + 1, b.comp))
        })
        .filter(|b| keep(b))
        .copied()
        .collect();
    let mut cands: BTreeSet<Node> = BTreeSet::new();
    for m in 0..p.ell() {
        cands.insert(Node::new(1, 1, m));
    }
    for b in cfg.nodes() {
        cands.insert(Node::new(b.row + 1, b.col, b.comp));
        cands.insert(Node::new(b.row, b.col + 1, b.comp));
    }
    let add: Vec<Node> = cands
        .into_iter()
        .filter(|b| !cfg.contains(b))
        .filter(|b| b.row == 1 || cfg.contains(&Node::new(b.row - 1, b.col, b.comp)))
        .filter(|b| b.col == 1 || cfg.contains(&Node::new(b.row, b.col - 1, b.comp)))
        .filter(|b| keep(b))
        .collect();
    (add, rem)
}

/// Garnir belt flavour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BeltFlavor {
    Cyl,
    Dom,
}

/// Membership in the Garnir belt of `b` (an unbounded template).
pub fn in_garnir_belt(x: &Node, b: &Node, flavor: BeltFlavor) -> bool {
    let (r, c, m) = (b.row, b.col, b.comp);
    let cyl = (x.row == r && x.comp < m)
        || (x.row == r && x.comp == m && x.col <= c)
        || (r > 1 && x.row == r - 1 && x.comp == m && x.col >= c)
        || (r > 1 && x.row == r - 1 && x.comp > m);
    match flavor {
        BeltFlavor::Cyl => cyl,
        BeltFlavor::Dom => cyl && x.comp == m,
    }
}

/// The Garnir belt of `b` intersected with `cfg`.
pub fn garnir_belt(b: &Node, flavor: BeltFlavor, cfg: &BoxConfig) -> BoxConfig {
    BoxConfig {
        nodes: cfg
            .nodes()
            .iter()
            .filter(|x| in_garnir_belt(x, b, flavor))
            .copied()
            .collect(),
    }
}

/// Belt boxes of `cfg` whose residue is within one of `res(alpha)`.
pub fn adj_gar(alpha: &Node, cfg: &BoxConfig, p: &AlgebraParams) -> Vec<Node> {
    let r = alpha.residue(p) as i64;
    let e = p.e as i64;
    garnir_belt(alpha, BeltFlavor::Cyl, cfg)
        .nodes()
        .iter()
        .filter(|g| {
            let d = (g.residue(p) as i64 - r).rem_euclid(e);
            d == 0 || d == 1 || d == e - 1
        })
        .copied()
        .collect()
}

/// A filling of a configuration by `1..=n`; `pos[k-1]` holds the box of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    pos: Vec<Node>,
}

impl Tableau {
    pub fn from_positions(pos: Vec<Node>) -> Result<Self> {
        BoxConfig::new(pos.clone())?;
        Ok(Tableau { pos })
    }

    pub fn empty() -> Self {
        Tableau { pos: Vec::new() }
    }

    /// Build from rows of entries per component, e.g. `[[[1,2],[3]], [[4]]]`.
    pub fn from_rows(rows: &[Vec<Vec<usize>>]) -> Result<Self> {
        let n: usize = rows.iter().flatten().map(|r| r.len()).sum();
        let mut pos = vec![None; n];
        for (m, comp) in rows.iter().enumerate() {
            for (i, row) in comp.iter().enumerate() {
                for (j, &k) in row.iter().enumerate() {
                    if k == 0 || k > n || pos[k - 1].is_some() {
                        return Err(Error::Invalid(format!("bad entry {k}")));
                    }
                    pos[k - 1] = Some(Node::new(i + 1, j + 1, m));
                }
            }
        }
        Ok(Tableau {
            pos: pos.into_iter().map(|x| x.unwrap()).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    pub fn positions(&self) -> &[Node] {
        &self.pos
    }

    /// The box holding `k` (1-based).
    pub fn node_of(&self, k: usize) -> Node {
        self.pos[k - 1]
    }

    pub fn entry(&self, b: &Node) -> Option<usize> {
        self.pos.iter().position(|x| x == b).map(|i| i + 1)
    }

    pub fn shape(&self) -> BoxConfig {
        BoxConfig::new(self.pos.clone()).unwrap()
    }

    pub fn push(&self, b: Node) -> Self {
        let mut pos = self.pos.clone();
        pos.push(b);
        Tableau { pos }
    }

    /// The subtableau of entries `1..=k`.
    pub fn restrict(&self, k: usize) -> Self {
        Tableau {
            pos: self.pos[..k].to_vec(),
        }
    }

    pub fn residue_sequence(&self, p: &AlgebraParams) -> Vec<Residue> {
        self.pos.iter().map(|b| b.residue(p)).collect()
    }

    pub fn is_row_standard(&self) -> bool {
        self.pos.iter().enumerate().all(|(k, b)| {
            b.col == 1
                || self
                    .entry(&Node::new(b.row, b.col - 1, b.comp))
                    .is_some_and(|e| e < k + 1)
        })
    }

    pub fn is_column_standard(&self) -> bool {
        self.pos.iter().enumerate().all(|(k, b)| {
            b.row == 1
                || self
                    .entry(&Node::new(b.row - 1, b.col, b.comp))
                    .is_some_and(|e| e < k + 1)
        })
    }

    pub fn is_standard(&self) -> bool {
        self.is_row_standard() && self.is_column_standard()
    }

    /// Rows of entries per component, for display.
    pub fn rows(&self, ell: usize) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new(); ell];
        for (k, b) in self.pos.iter().enumerate() {
            let comp = &mut out[b.comp];
            while comp.len() < b.row {
                comp.push(Vec::new());
            }
            let row = &mut comp[b.row - 1];
            while row.len() < b.col {
                row.push(0);
            }
            row[b.col - 1] = k + 1;
        }
        out
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ell = self.pos.iter().map(|b| b.comp + 1).max().unwrap_or(1);
        let rows = self.rows(ell);
        write!(f, "(")?;
        for (m, comp) in rows.iter().enumerate() {
            if m > 0 {
                write!(f, " | ")?;
            }
            let strs: Vec<String> = comp
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            write!(f, "{}", strs.join(" / "))?;
        }
        write!(f, ")")
    }
}

/// Fill by repeatedly placing the largest remaining entry in the minimal box.
pub fn canonical_tableau(cfg: &BoxConfig, order: BoxOrder) -> Tableau {
    let mut nodes = cfg.nodes().to_vec();
    nodes.sort_by(|a, b| compare_boxes(b, a, order));
    Tableau { pos: nodes }
}

/// `(t_λ, S_λ)`.
pub fn canonical_tableaux(cfg: &BoxConfig) -> (Tableau, Tableau) {
    (
        canonical_tableau(cfg, BoxOrder::Cyl),
        canonical_tableau(cfg, BoxOrder::Dom),
    )
}

pub fn t_lambda(lambda: &Multipartition) -> Tableau {
    canonical_tableau(&lambda.to_config(), BoxOrder::Cyl)
}

/// `w` with `w(t) = s`, as a 0-based map on entries: `w[t(b)-1] = s(b)-1`.
pub fn permutation_between(s: &Tableau, t: &Tableau) -> Result<Vec<usize>> {
    if s.shape() != t.shape() {
        return Err(Error::ShapeMismatch(format!("{} vs {}", s.shape(), t.shape())));
    }
    let mut w = vec![0; t.n()];
    for (k, b) in t.pos.iter().enumerate() {
        w[k] = s.entry(b).unwrap() - 1;
    }
    Ok(w)
}

/// All standard tableaux of a multipartition, in a fixed deterministic order.
pub fn standard_tableaux(lambda: &Multipartition) -> Vec<Tableau> {
    fn go(cfg: &BoxConfig, out: &mut Vec<Vec<Node>>) {
        if cfg.is_empty() {
            out.push(Vec::new());
            return;
        }
        let rem: Vec<Node> = cfg
            .nodes()
            .iter()
            .filter(|b| {
                !cfg.contains(&Node::new(b.row + 1, b.col, b.comp))
                    && !cfg.contains(&Node::new(b.row, b.col + 1, b.comp))
            })
            .copied()
            .collect();
        for b in rem {
            let mut sub = Vec::new();
            go(&cfg.without(&b), &mut sub);
            for mut v in sub {
                v.push(b);
                out.push(v);
            }
        }
    }
    let mut out = Vec::new();
    go(&lambda.to_config(), &mut out);
    let mut tabs: Vec<Tableau> = out.into_iter().map(|pos| Tableau { pos }).collect();
    tabs.sort_by(|a, b| a.pos.cmp(&b.pos));
    tabs
}

/// `deg_≥(t)`: sum over `k` of addable minus removable same-residue boxes below `t⁻¹(k)`.
pub fn tableau_degree(t: &Tableau, order: BoxOrder, p: &AlgebraParams) -> Result<i64> {
    if !t.is_standard() {
        return Err(Error::NotStandard);
    }
    Ok(degree_unchecked(t, order, p))
}

pub(crate) fn degree_unchecked(t: &Tableau, order: BoxOrder, p: &AlgebraParams) -> i64 {
    (1..=t.n()).map(|k| degree_step(t, k, order, p)).sum()
}

fn degree_step(t: &Tableau, k: usize, order: BoxOrder, p: &AlgebraParams) -> i64 {
    let (a, r) = below_counts(t, k, order, p);
    a as i64 - r as i64
}

fn below_counts(t: &Tableau, k: usize, order: BoxOrder, p: &AlgebraParams) -> (usize, usize) {
    let b = t.node_of(k);
    let shape = t.restrict(k).shape();
    let (add, rem) = addable_removable(&shape, Some(b.residue(p)), p);
    let below = |x: &Node| compare_boxes(&b, x, order) == Ordering::Greater;
    (
        add.iter().filter(|x| below(x)).count(),
        rem.iter().filter(|x| below(x)).count(),
    )
}

/// Exponents of `y_k` in `y^≥_λ`, read off the canonical tableau of the order.
pub fn y_exponents(cfg: &BoxConfig, order: BoxOrder, p: &AlgebraParams) -> Vec<usize> {
    let t = canonical_tableau(cfg, order);
    (1..=t.n()).map(|k| below_counts(&t, k, order, p).0).collect()
}

/// One summand of the ideal generator: `y^{exps} e_{res}` on the first `len` strands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealGenerator {
    pub comp: usize,
    pub residues: Vec<Residue>,
    pub dots: Vec<usize>,
}

impl IdealGenerator {
    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// True when the generator is a bare idempotent (kills its prefix outright).
    pub fn is_idempotent(&self) -> bool {
        self.dots.iter().all(|&d| d == 0)
    }
}

/// The summands `y^≻_{(∅,…,(h_m+1),…,∅)} ⊠ 1`, those that fit in rank `n`.
pub fn y_ideal_generators(p: &AlgebraParams) -> Vec<IdealGenerator> {
    let mut out = Vec::new();
    for m in 0..p.ell() {
        let len = p.h[m] + 1;
        if len > p.n {
            continue;
        }
        let mut parts = vec![Vec::new(); p.ell()];
        parts[m] = vec![len];
        let cfg = Multipartition { parts }.to_config();
        let t = canonical_tableau(&cfg, BoxOrder::Cyl);
        out.push(IdealGenerator {
            comp: m,
            residues: t.residue_sequence(p),
            dots: y_exponents(&cfg, BoxOrder::Cyl, p),
        });
    }
    out
}

/// `[i,j,m]` is left-justified in `cfg` if `j ≤ e` or some `[i, j-q, m]` with `1 ≤ q ≤ e` lies in `cfg`.
pub fn is_left_justified(b: &Node, cfg: &BoxConfig, p: &AlgebraParams) -> bool {
    b.col <= p.e
        || (1..=p.e).any(|q| b.col > q && cfg.contains(&Node::new(b.row, b.col - q, b.comp)))
}

/// Result of a Y-move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YMove {
    Defined { config: BoxConfig, target: Node },
    Undefined,
}

impl YMove {
    pub fn config(&self) -> Option<&BoxConfig> {
        match self {
            YMove::Defined { config, .. } => Some(config),
            YMove::Undefined => None,
        }
    }
}

/// The ≻-minimal left-justified box of residue `res(a)`, not in `cfg`, strictly ≻-above `a`.
fn y_target(cfg: &BoxConfig, a: &Node, p: &AlgebraParams) -> Option<Node> {
    let r = a.residue(p);
    let max_col = cfg.nodes().iter().map(|b| b.col).max().unwrap_or(0) + p.e + 1;
    let mut best: Option<Node> = None;
    for row in 1..=a.row {
        for comp in 0..p.ell() {
            for col in 1..=max_col {
                let b = Node::new(row, col, comp);
                if compare_cyl(&b, a) != Ordering::Greater
                    || cfg.contains(&b)
                    || b.residue(p) != r
                    || !is_left_justified(&b, cfg, p)
                {
                    continue;
                }
                if best.is_none_or(|x| compare_cyl(&b, &x) == Ordering::Less) {
                    best = Some(b);
                }
            }
        }
    }
    best
}

/// `Y^k_a(cfg)`: `k` successive single-box moves starting from `a`.
pub fn y_move(cfg: &BoxConfig, a: &Node, power: usize, p: &AlgebraParams) -> Result<YMove> {
    if !cfg.contains(a) {
        return Err(Error::MissingBox(a.to_string()));
    }
    let rest = cfg.without(a);
    let mut cur = *a;
    let mut result = YMove::Undefined;
    for _ in 0..power.max(1) {
        match y_target(&rest.with(cur), &cur, p) {
            Some(b) => {
                result = YMove::Defined {
                    config: rest.with(b),
                    target: b,
                };
                cur = b;
            }
            None => return Ok(YMove::Undefined),
        }
    }
    Ok(result)
}

/// The box `β` of the straightening step: `Y^{ℓ+1}` when the adjacency residues are exactly `{r-1}`, else `Y^1`.
pub fn y_move_propagate(lambda: &BoxConfig, alpha: &Node, p: &AlgebraParams) -> YMove {
    let r = alpha.residue(p);
    let rm1 = p.residue(r as i64 - 1);
    let adj = adj_gar(alpha, lambda, p);
    let res: BTreeSet<Residue> = adj.iter().map(|g| g.residue(p)).collect();
    let k = if res.len() == 1 && res.contains(&rm1) {
        p.ell() + 1
    } else {
        1
    };
    y_move(&lambda.with(*alpha), alpha, k, p).unwrap_or(YMove::Undefined)
}

/// The J-tableau of a residue sequence, or `None` when some step has no addable box.
pub fn j_tableau(j: &[Residue], p: &AlgebraParams) -> Option<Tableau> {
    let mut t = Tableau::empty();
    let mut shape = BoxConfig::empty();
    for &r in j {
        let (add, _) = addable_removable(&shape, Some(r), p);
        let b = add.into_iter().min_by(compare_cyl)?;
        shape = shape.with(b);
        t = t.push(b);
    }
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(e: usize, h: usize, n: usize) -> AlgebraParams {
        AlgebraParams::level_one(e, h, n).unwrap()
    }

    fn mp(s: &str) -> Multipartition {
        Multipartition::parse(s).unwrap()
    }

    #[test]
    fn residues() {
        let p = AlgebraParams::new(14, vec![0, 3, 8], vec![3, 5, 5], 1).unwrap();
        assert_eq!(Node::new(3, 3, 1).residue(&p), 3);
        assert_eq!(Node::new(2, 2, 0).residue(&p1(5, 2, 1)), 0);
        assert!(Node::new(1, 1, 3).try_residue(&p).is_err());
    }

    #[test]
    fn box_orders() {
        assert_eq!(compare_cyl(&Node::new(1, 5, 0), &Node::new(2, 1, 0)), Ordering::Greater);
        assert_eq!(compare_cyl(&Node::new(2, 1, 0), &Node::new(2, 1, 1)), Ordering::Greater);
        assert_eq!(compare_dom(&Node::new(1, 1, 0), &Node::new(1, 1, 1)), Ordering::Greater);
        assert_eq!(compare_dom(&Node::new(2, 1, 0), &Node::new(1, 1, 1)), Ordering::Greater);
        let a = mp("2").to_config();
        let b = mp("1,1").to_config();
        assert_eq!(a.compare(&b, BoxOrder::Dom), Ordering::Greater);
        assert_eq!(a.compare(&b, BoxOrder::Cyl), Ordering::Greater);
    }

    #[test]
    fn config_compare_y_example() {
        let lam = mp("3,2,2,1,1,1,1,1,1").to_config();
        let other = mp("3,2,1,1,1,1,1,1,1").to_config().with(Node::new(2, 6, 0));
        assert_eq!(other.compare(&lam, BoxOrder::Cyl), Ordering::Greater);
    }

    #[test]
    fn add_rem() {
        let p = p1(5, 3, 13);
        let lam = mp("3,2,2,1,1,1,1,1,1").to_config();
        let (_, rem) = addable_removable(&lam, None, &p);
        assert_eq!(
            rem,
            vec![Node::new(1, 3, 0), Node::new(3, 2, 0), Node::new(9, 1, 0)]
        );
        let (add, rem) = addable_removable(&mp("1").to_config(), None, &p);
        assert_eq!(add, vec![Node::new(1, 2, 0), Node::new(2, 1, 0)]);
        assert_eq!(rem, vec![Node::new(1, 1, 0)]);
        let p2 = AlgebraParams::new(7, vec![0, 3], vec![2, 2], 0).unwrap();
        let (add, rem) = addable_removable(&BoxConfig::empty(), None, &p2);
        assert_eq!(add, vec![Node::new(1, 1, 0), Node::new(1, 1, 1)]);
        assert!(rem.is_empty());
    }

    #[test]
    fn garnir_example() {
        let p = AlgebraParams::new(14, vec![0, 3, 8], vec![3, 5, 5], 1).unwrap();
        let lam = mp("3,3,2,2,1|5,5,3,2,1|4,4,3,1,1").to_config();
        let a = Node::new(3, 3, 1);
        let belt = garnir_belt(&a, BeltFlavor::Cyl, &lam);
        let adj = adj_gar(&a, &lam.without(&a), &p);
        assert_eq!(adj, vec![Node::new(2, 3, 1), Node::new(3, 2, 1)]);
        let dom = garnir_belt(&a, BeltFlavor::Dom, &lam);
        assert!(dom.nodes().iter().all(|b| b.comp == 1));
        assert!(dom.len() < belt.len());
        let single = garnir_belt(&Node::new(1, 1, 0), BeltFlavor::Cyl, &lam);
        assert_eq!(single.nodes(), &[Node::new(1, 1, 0)]);
    }

    #[test]
    fn canonical_example() {
        let lam = mp("2,1,1|2,2,1|1,1,1");
        let t = t_lambda(&lam);
        let want = Tableau::from_rows(&[
            vec![vec![1, 2], vec![6], vec![10]],
            vec![vec![3, 4], vec![7, 8], vec![11]],
            vec![vec![5], vec![9], vec![12]],
        ])
        .unwrap();
        assert_eq!(t, want);
        let s = Tableau::from_rows(&[
            vec![vec![1, 6], vec![2], vec![10]],
            vec![vec![3, 5], vec![7, 8], vec![11]],
            vec![vec![4], vec![9], vec![12]],
        ])
        .unwrap();
        let w = permutation_between(&s, &t).unwrap();
        let mut want = (0..12).collect::<Vec<_>>();
        want.swap(3, 4);
        want.swap(1, 5);
        assert_eq!(w, want);
        let col = t_lambda(&mp("1,1,1,1"));
        assert_eq!(
            col.positions(),
            &[Node::new(1, 1, 0), Node::new(2, 1, 0), Node::new(3, 1, 0), Node::new(4, 1, 0)]
        );
    }

    #[test]
    fn y_moves() {
        let p = p1(5, 3, 13);
        let lam = mp("3,2,2,1,1,1,1,1,1").to_config();
        let base = mp("3,2,1,1,1,1,1,1,1").to_config();
        let y1 = y_move(&lam, &Node::new(3, 2, 0), 1, &p).unwrap();
        assert_eq!(y1.config(), Some(&base.with(Node::new(2, 6, 0))));
        let y2 = y_move(&lam, &Node::new(3, 2, 0), 2, &p).unwrap();
        assert_eq!(y2.config(), Some(&base.with(Node::new(1, 5, 0))));
        let a = Node::new(4, 1, 0);
        let z1 = y_move(&lam, &a, 1, &p).unwrap();
        assert_eq!(z1.config(), Some(&lam.with(Node::new(3, 5, 0)).without(&a)));
        let z2 = y_move(&lam, &a, 2, &p).unwrap();
        assert_eq!(z2.config(), Some(&lam.with(Node::new(2, 4, 0)).without(&a)));
        let top = mp("1").to_config();
        assert_eq!(
            y_move(&top, &Node::new(1, 1, 0), 1, &p).unwrap(),
            YMove::Undefined
        );
        assert!(y_move(&top, &Node::new(2, 1, 0), 1, &p).is_err());
    }

    #[test]
    fn j_tableau_example() {
        let p = p1(5, 3, 13);
        let j = [0, 1, 4, 0, 3, 4, 2, 1, 0, 4, 3, 2, 2];
        let t = j_tableau(&j, &p).unwrap();
        assert_eq!(t.shape(), mp("3,2,2,1,1,1,1,1,1").to_config());
        assert!(t.is_standard());
        assert_eq!(t.residue_sequence(&p), j.to_vec());
        assert!(j_tableau(&[0, 0], &p).is_none());
        assert_eq!(j_tableau(&[], &p), Some(Tableau::empty()));
    }

    #[test]
    fn ideal_generators() {
        let p = p1(5, 2, 4);
        let g = y_ideal_generators(&p);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].residues, vec![0, 1, 2]);
        assert!(g[0].is_idempotent());
        let p = AlgebraParams::new(7, vec![0, 3], vec![3, 2], 5).unwrap();
        let g = y_ideal_generators(&p);
        assert_eq!(g[0].residues, vec![0, 1, 2, 3]);
        assert_eq!(g[0].dots, vec![0, 0, 0, 1]);
        assert!(g[1].is_idempotent());
        assert!(y_ideal_generators(&p1(5, 2, 2)).is_empty());
    }

    #[test]
    fn y_exponents_vanish_on_ph() {
        let p = AlgebraParams::new(7, vec![0, 3], vec![2, 2], 5).unwrap();
        for lam in multipartitions_ph(&p, 5) {
            let y = y_exponents(&lam.to_config(), BoxOrder::Cyl, &p);
            assert!(y.iter().all(|&x| x == 0), "{lam}");
        }
        assert!(y_exponents(&BoxConfig::empty(), BoxOrder::Cyl, &p).is_empty());
    }

    #[test]
    fn counts() {
        assert_eq!(multipartitions(4, 1).len(), 5);
        assert_eq!(multipartitions(3, 2).len(), 10);
        let lam = mp("2,1");
        assert_eq!(standard_tableaux(&lam).len(), 2);
        assert_eq!(standard_tableaux(&mp("3,2|1")).len(), 30);
        assert_eq!(Multipartition::parse("(2,1|-)").unwrap().to_string(), "(2,1|-)");
    }

    #[test]
    fn degree_of_single_box() {
        let p = p1(5, 2, 1);
        assert_eq!(tableau_degree(&t_lambda(&mp("1")), BoxOrder::Cyl, &p).unwrap(), 0);
    }
}
