//! Graded components `A^r_k` as coordinate spaces, and the submodule
//! machinery built on them: closure, invariance, singular vectors,
//! irreducibility, composition series and direct sums.
//!
//! Components with `0 < r < n` are infinite-dimensional. They are examined in
//! a window: columns with `|alpha| <= deg_cap` form the interior, and two
//! further degrees are enumerated so that every operator image of an interior
//! vector is representable. Operators are only ever applied to interior
//! vectors, so a windowed closure is a subset of the true closure.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::liealg::AlgebraBasis;
use crate::linalg::{self, RowEchelon, SparseVec};
use crate::rep::{self, RepError, RepParams};
use crate::scalar::Scalar;
use crate::superpoly::{Monomial, SuperPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("A^{r}_k is infinite-dimensional for 0 < r < n; a degree cap is required")]
    MissingCap { r: usize },
    #[error("{monomial} has degree eigenvalue {found}, expected {expected}")]
    WrongEigenvalue { monomial: String, found: i64, expected: i64 },
    #[error("{monomial} has wrong fermion count {found}, expected {expected}")]
    WrongFermionCount { monomial: String, found: usize, expected: usize },
    #[error("{monomial} exceeds the degree cap {cap}")]
    Truncation { monomial: String, cap: u32 },
    #[error("operator {op} maps {monomial} outside the component")]
    OperatorLeaves { op: usize, monomial: String },
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Ordered monomial basis of `A^r_k` (optionally with a fixed fermion count),
/// truncated to a window when infinite.
#[derive(Debug, Clone)]
pub struct ComponentBasis {
    params: RepParams,
    k: i64,
    fermions: Option<usize>,
    deg_cap: Option<u32>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    interior_start: usize,
}

/// All compositions of `total` into `parts` nonnegative parts.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl ComponentBasis {
    /// `A^r_k`. The cap is required exactly when `0 < r < n`; it is ignored
    /// for the finite components.
    pub fn new(params: RepParams, k: i64, deg_cap: Option<u32>) -> Result<Self, ModError> {
        Self::build(params, k, None, deg_cap)
    }

    /// `A^r_{k,t}`: the part of `A^r_k` with exactly `t` fermions.
    pub fn with_fermions(params: RepParams, k: i64, t: usize, deg_cap: Option<u32>) -> Result<Self, ModError> {
        Self::build(params, k, Some(t), deg_cap)
    }

    fn build(params: RepParams, k: i64, fermions: Option<usize>, deg_cap: Option<u32>) -> Result<Self, ModError> {
        let RepParams { n, r } = params;
        let infinite = 0 < r && r < n;
        let deg_cap = if infinite {
            Some(deg_cap.ok_or(ModError::MissingCap { r })?)
        } else {
            None
        };
        let ext = deg_cap.map(|c| c + 2);
        let mut monomials = Vec::new();
        for mask in 0u32..(1 << n) {
            let t = mask.count_ones() as usize;
            if fermions.is_some_and(|f| f != t) {
                continue;
            }
            let fs: Vec<usize> = (1..=n).filter(|p| mask & (1 << (p - 1)) != 0).collect();
            // b - a = k - t with a the degree in x_1..x_r and b in x_{r+1}..x_n
            let d = k - t as i64;
            let pairs: Vec<(i64, i64)> = if r == 0 {
                vec![(0, d)]
            } else if r == n {
                vec![(-d, 0)]
            } else {
                let e = ext.expect("cap set for infinite components") as i64;
                (d.max(0) - d..).map(|a| (a, a + d)).take_while(|(a, b)| a + b <= e).collect()
            };
            for (a, b) in pairs {
                if a < 0 || b < 0 {
                    continue;
                }
                for low in compositions(a as u32, r) {
                    for high in compositions(b as u32, n - r) {
                        let mut alpha = low.clone();
                        alpha.extend(high);
                        monomials.push(Monomial::new(alpha, &fs).expect("valid fermions"));
                    }
                }
            }
        }
        monomials.sort();
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let interior_start = match deg_cap {
            Some(c) => monomials.iter().position(|m| m.degree() <= c).unwrap_or(monomials.len()),
            None => 0,
        };
        Ok(ComponentBasis {
            params,
            k,
            fermions,
            deg_cap,
            monomials,
            index,
            interior_start,
        })
    }

    pub fn params(&self) -> RepParams {
        self.params
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn fermion_filter(&self) -> Option<usize> {
        self.fermions
    }

    pub fn deg_cap(&self) -> Option<u32> {
        self.deg_cap
    }

    pub fn is_truncated(&self) -> bool {
        self.deg_cap.is_some()
    }

    /// Number of enumerated monomials, extended window included.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Dimension of the component, or of its interior window when truncated.
    pub fn dim(&self) -> usize {
        self.monomials.len() - self.interior_start
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, col: usize) -> &Monomial {
        &self.monomials[col]
    }

    pub fn interior_start(&self) -> usize {
        self.interior_start
    }

    /// First column with `|alpha| <= deg_cap - buffer` (0 when finite).
    pub fn low_start(&self, buffer: u32) -> usize {
        match self.deg_cap {
            Some(c) => {
                let limit = c.saturating_sub(buffer);
                self.monomials.iter().position(|m| m.degree() <= limit).unwrap_or(self.monomials.len())
            }
            None => 0,
        }
    }

    pub fn column(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `f`; every term must belong to the interior.
    pub fn coords(&self, f: &SuperPolynomial) -> Result<SparseVec, ModError> {
        let mut out = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let found = rep::degree(self.params, m);
            if found != self.k {
                return Err(ModError::WrongEigenvalue {
                    monomial: m.to_string(),
                    found,
                    expected: self.k,
                });
            }
            if let Some(t) = self.fermions {
                if m.fermion_count() != t {
                    return Err(ModError::WrongFermionCount {
                        monomial: m.to_string(),
                        found: m.fermion_count(),
                        expected: t,
                    });
                }
            }
            match self.column(m) {
                Some(col) if col >= self.interior_start => out.push((col, c.clone())),
                _ => {
                    return Err(ModError::Truncation {
                        monomial: m.to_string(),
                        cap: self.deg_cap.unwrap_or(0),
                    })
                }
            }
        }
        Ok(linalg::sparse_from(out))
    }

    pub fn to_poly(&self, v: &[(usize, Scalar)]) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(self.params.n);
        for (col, c) in v {
            out.add_term(self.monomials[*col].clone(), c.clone());
        }
        out
    }

    /// Unit vector of a column.
    pub fn unit(&self, col: usize) -> SparseVec {
        vec![(col, Scalar::one())]
    }

    /// Weight of every column with respect to a diagonal Cartan basis.
    pub fn weights(&self, cartan: &AlgebraBasis) -> Vec<Vec<i64>> {
        self.monomials.iter().map(|m| rep::weight(self.params, cartan, m)).collect()
    }
}

/// Matrices of a list of operators on the interior columns of a component.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    name: String,
    interior_start: usize,
    /// `images[op][col - interior_start]`
    images: Vec<Vec<SparseVec>>,
}

impl OperatorSet {
    pub fn new(comp: &ComponentBasis, basis: &AlgebraBasis) -> Result<Self, ModError> {
        let mut images = Vec::with_capacity(basis.len());
        for (op, x) in basis.elements.iter().enumerate() {
            let mut cols = Vec::with_capacity(comp.dim());
            for m in &comp.monomials[comp.interior_start..] {
                let image = rep::apply_element_monomial(comp.params, x, m);
                let mut v = Vec::with_capacity(image.len());
                for (im, c) in image.terms() {
                    match comp.column(im) {
                        Some(col) => v.push((col, c.clone())),
                        None => {
                            return Err(ModError::OperatorLeaves {
                                op,
                                monomial: m.to_string(),
                            })
                        }
                    }
                }
                v.sort_by_key(|e| e.0);
                cols.push(v);
            }
            images.push(cols);
        }
        Ok(OperatorSet {
            name: basis.name.to_string(),
            interior_start: comp.interior_start,
            images,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of an interior vector under operator `op`.
    pub fn apply(&self, op: usize, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (col, c) in v {
            debug_assert!(*col >= self.interior_start, "operators act on interior vectors only");
            for (j, d) in &self.images[op][col - self.interior_start] {
                let e = acc.entry(*j).or_default();
                *e = &*e + &(c * d);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// A subspace of a component, stored in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    echelon: RowEchelon,
    interior_start: usize,
}

impl SubspaceBasis {
    pub fn zero(comp: &ComponentBasis) -> Self {
        SubspaceBasis {
            echelon: RowEchelon::new(),
            interior_start: comp.interior_start,
        }
    }

    pub fn span(comp: &ComponentBasis, vectors: &[SparseVec]) -> Self {
        let mut out = Self::zero(comp);
        for v in vectors {
            out.echelon.insert(v);
        }
        out
    }

    /// The whole component (its interior when truncated).
    pub fn full(comp: &ComponentBasis) -> Self {
        let units: Vec<_> = (comp.interior_start..comp.len()).map(|c| comp.unit(c)).collect();
        Self::span(comp, &units)
    }

    /// Dimension of the part inside the interior window.
    pub fn dim(&self) -> usize {
        self.echelon.rank_from(self.interior_start)
    }

    /// Dimension including vectors that reach into the extended window.
    pub fn total_dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.echelon.is_empty()
    }

    pub fn echelon(&self) -> &RowEchelon {
        &self.echelon
    }

    /// Rows supported inside the interior window.
    pub fn interior_rows(&self) -> Vec<SparseVec> {
        self.echelon.rows_from(self.interior_start).cloned().collect()
    }

    /// Rows supported on columns `>= first`.
    pub fn rows_from(&self, first: usize) -> Vec<SparseVec> {
        self.echelon.rows_from(first).cloned().collect()
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.echelon.contains(v)
    }

    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.echelon.reduce(v)
    }

    /// Whether every interior row of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.echelon.rows_from(self.interior_start).all(|v| other.contains(v))
    }

    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        self.echelon.insert(v).is_some()
    }
}

/// `a + b`, interior rows only.
pub fn sum(comp: &ComponentBasis, a: &SubspaceBasis, b: &SubspaceBasis) -> SubspaceBasis {
    let mut rows = a.interior_rows();
    rows.extend(b.interior_rows());
    SubspaceBasis::span(comp, &rows)
}

/// `a ∩ b` of the interior parts, by the Zassenhaus method.
pub fn intersection(comp: &ComponentBasis, a: &SubspaceBasis, b: &SubspaceBasis) -> SubspaceBasis {
    let width = comp.len();
    let mut big = RowEchelon::new();
    for v in a.interior_rows() {
        let mut doubled = v.clone();
        doubled.extend(v.iter().map(|(c, x)| (c + width, x.clone())));
        big.insert(&doubled);
    }
    for v in b.interior_rows() {
        big.insert(&v);
    }
    let rows: Vec<SparseVec> = big
        .rows_from(width)
        .map(|v| v.iter().map(|(c, x)| (c - width, x.clone())).collect())
        .collect();
    SubspaceBasis::span(comp, &rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub generators: usize,
    pub operators: String,
    pub iterations: usize,
    pub dimension: usize,
    pub stabilized: bool,
    /// `(deg_cap, note)` when the component is truncated.
    pub truncation_window: Option<(u32, String)>,
}

/// Least subspace containing `gens` (and `seed`, assumed invariant) that is
/// stable under every operator in `ops`.
pub fn closure_from(
    comp: &ComponentBasis,
    ops: &OperatorSet,
    gens: &[SparseVec],
    seed: Option<&SubspaceBasis>,
) -> (SubspaceBasis, ClosureReport) {
    let mut space = seed.cloned().unwrap_or_else(|| SubspaceBasis::zero(comp));
    let mut processed = RowEchelon::from_vectors(&space.interior_rows());
    for g in gens {
        space.insert(g);
    }
    let mut iterations = 0;
    loop {
        let mut fresh = Vec::new();
        for row in space.interior_rows() {
            let r = processed.reduce(&row);
            if !r.is_empty() {
                processed.insert_reduced(r.clone());
                fresh.push(r);
            }
        }
        if fresh.is_empty() {
            break;
        }
        iterations += 1;
        for v in &fresh {
            for op in 0..ops.len() {
                let image = ops.apply(op, v);
                if !image.is_empty() {
                    space.insert(&image);
                }
            }
        }
    }
    let report = ClosureReport {
        generators: gens.len(),
        operators: ops.name().to_string(),
        iterations,
        dimension: space.dim(),
        stabilized: true,
        truncation_window: comp.deg_cap.map(|c| {
            (
                c,
                format!("operators applied only to vectors with |alpha| <= {c}; the result is a subset of the true closure"),
            )
        }),
    };
    (space, report)
}

/// Closure of polynomial generators, checked against the component first.
pub fn closure(
    comp: &ComponentBasis,
    ops: &OperatorSet,
    gens: &[SuperPolynomial],
) -> Result<(SubspaceBasis, ClosureReport), ModError> {
    let coords = gens.iter().map(|g| comp.coords(g)).collect::<Result<Vec<_>, _>>()?;
    Ok(closure_from(comp, ops, &coords, None))
}

/// First `(operator, row)` pair whose image leaves `space`. Only interior rows
/// are tested.
pub fn invariance_defect(space: &SubspaceBasis, ops: &OperatorSet) -> Option<(usize, SparseVec)> {
    for row in space.interior_rows() {
        for op in 0..ops.len() {
            if !space.contains(&ops.apply(op, &row)) {
                return Some((op, row));
            }
        }
    }
    None
}

pub fn invariance_check(space: &SubspaceBasis, ops: &OperatorSet) -> bool {
    invariance_defect(space, ops).is_none()
}

/// Kernel of the positive operators on one weight space of `top / bottom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularSpace {
    pub weight: Vec<i64>,
    pub vectors: Vec<SparseVec>,
}

/// Splits `v` into its weight components.
fn weight_components(v: &[(usize, Scalar)], weights: &[Vec<i64>]) -> BTreeMap<Vec<i64>, SparseVec> {
    let mut out: BTreeMap<Vec<i64>, SparseVec> = BTreeMap::new();
    for (col, c) in v {
        out.entry(weights[*col].clone()).or_default().push((*col, c.clone()));
    }
    out
}

/// Singular vectors of `top / bottom` for the positive operators `pos`,
/// grouped by weight. Both subspaces must be stable under `cartan` and lie
/// in the interior.
pub fn singular_vectors(
    comp: &ComponentBasis,
    pos: &OperatorSet,
    cartan: &AlgebraBasis,
    top: &SubspaceBasis,
    bottom: Option<&SubspaceBasis>,
) -> Vec<SingularSpace> {
    let weights = comp.weights(cartan);
    let zero = SubspaceBasis::zero(comp);
    let bottom = bottom.unwrap_or(&zero);
    let mut blocks: BTreeMap<Vec<i64>, RowEchelon> = BTreeMap::new();
    for row in top.interior_rows() {
        for (w, part) in weight_components(&row, &weights) {
            let r = bottom.reduce(&part);
            if !r.is_empty() {
                blocks.entry(w).or_default().insert(&r);
            }
        }
    }
    let mut out = Vec::new();
    for (weight, block) in blocks {
        let reps: Vec<SparseVec> = block.rows().cloned().collect();
        let m = reps.len();
        let mut eqs: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (i, c) in reps.iter().enumerate() {
            for op in 0..pos.len() {
                for (col, v) in bottom.reduce(&pos.apply(op, c)) {
                    eqs.entry((op, col)).or_default().push((i, v));
                }
            }
        }
        let system = RowEchelon::from_vectors(eqs.values());
        let kernel = system.kernel(m);
        if kernel.is_empty() {
            continue;
        }
        let vectors = kernel
            .iter()
            .map(|a| {
                let mut acc = Vec::new();
                for (i, coef) in a {
                    acc = linalg::axpy(&acc, coef, &reps[*i]);
                }
                acc
            })
            .collect();
        out.push(SingularSpace { weight, vectors });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every singular line generates the whole layer.
    Irreducible,
    /// `witness` generates a proper nonzero submodule of dimension `dim`.
    Reducible { witness: SparseVec, dim: usize },
    /// A singular space of dimension >= 2 was sampled instead of swept.
    ProbabilisticIrreducible { samples: usize },
    /// Every low test vector regenerates the low part of the layer.
    WindowIrreducible { tested: usize },
    ZeroModule,
    Inconclusive(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Irreducible => "IRREDUCIBLE",
            Verdict::Reducible { .. } => "REDUCIBLE",
            Verdict::ProbabilisticIrreducible { .. } => "PROBABILISTIC_IRREDUCIBLE",
            Verdict::WindowIrreducible { .. } => "WINDOW_IRREDUCIBLE",
            Verdict::ZeroModule => "ZERO_MODULE",
            Verdict::Inconclusive(_) => "INCONCLUSIVE",
        }
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(
            self,
            Verdict::Irreducible | Verdict::ProbabilisticIrreducible { .. } | Verdict::WindowIrreducible { .. }
        )
    }
}

/// Knobs for [`is_irreducible`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibilityOptions {
    pub seed: u64,
    pub samples: usize,
    pub buffer: u32,
}

impl Default for IrreducibilityOptions {
    fn default() -> Self {
        IrreducibilityOptions {
            seed: 0,
            samples: 16,
            buffer: 4,
        }
    }
}

/// Operators and Cartan data needed to test a layer.
pub struct ModuleContext<'a> {
    pub comp: &'a ComponentBasis,
    pub algebra: &'a OperatorSet,
    pub pos: &'a OperatorSet,
    pub cartan: &'a AlgebraBasis,
}

/// Decides whether `top / bottom` is irreducible (`bottom = None` means 0).
/// Both must be invariant, with `bottom` inside `top`.
pub fn is_irreducible(
    ctx: &ModuleContext<'_>,
    top: &SubspaceBasis,
    bottom: Option<&SubspaceBasis>,
    opts: IrreducibilityOptions,
) -> Verdict {
    let zero = SubspaceBasis::zero(ctx.comp);
    let bottom = bottom.unwrap_or(&zero);
    if top.dim() == bottom.dim() {
        return Verdict::ZeroModule;
    }
    if ctx.comp.is_truncated() {
        return window_irreducible(ctx, top, bottom, opts);
    }
    let proper = |v: &SparseVec| -> Option<Verdict> {
        let (s, _) = closure_from(ctx.comp, ctx.algebra, std::slice::from_ref(v), Some(bottom));
        (s.dim() < top.dim()).then(|| Verdict::Reducible {
            witness: v.clone(),
            dim: s.dim() - bottom.dim(),
        })
    };
    let spaces = singular_vectors(ctx.comp, ctx.pos, ctx.cartan, top, Some(bottom));
    if spaces.is_empty() {
        return Verdict::Inconclusive("no singular vectors found in a nonzero layer".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut sampled = 0;
    for space in &spaces {
        for v in &space.vectors {
            if let Some(verdict) = proper(v) {
                return verdict;
            }
        }
        if space.vectors.len() >= 2 {
            for _ in 0..opts.samples {
                let mut v = Vec::new();
                for b in &space.vectors {
                    let c = Scalar::from_int(rng.gen_range(-9..=9));
                    v = linalg::axpy(&v, &c, b);
                }
                if v.is_empty() {
                    continue;
                }
                sampled += 1;
                if let Some(verdict) = proper(&v) {
                    return verdict;
                }
            }
        }
    }
    if sampled > 0 {
        Verdict::ProbabilisticIrreducible { samples: sampled }
    } else {
        Verdict::Irreducible
    }
}

fn window_irreducible(
    ctx: &ModuleContext<'_>,
    top: &SubspaceBasis,
    bottom: &SubspaceBasis,
    opts: IrreducibilityOptions,
) -> Verdict {
    let low = ctx.comp.low_start(opts.buffer);
    let targets = top.rows_from(low);
    let mut tested = 0;
    for v in &targets {
        let r = bottom.reduce(v);
        if r.is_empty() {
            continue;
        }
        tested += 1;
        let (s, _) = closure_from(ctx.comp, ctx.algebra, std::slice::from_ref(&r), Some(bottom));
        if let Some(missing) = targets.iter().find(|t| !s.contains(t)) {
            let _ = missing;
            return Verdict::Reducible {
                witness: r,
                dim: s.dim() - bottom.dim(),
            };
        }
    }
    if tested == 0 {
        Verdict::Inconclusive(format!(
            "no test vectors with |alpha| <= {} outside the lower layer",
            ctx.comp.deg_cap.unwrap_or(0).saturating_sub(opts.buffer)
        ))
    } else {
        Verdict::WindowIrreducible { tested }
    }
}

/// One layer `upper / lower` of a checked chain.
#[derive(Debug, Clone)]
pub struct LayerReport {
    pub upper: String,
    pub lower: String,
    pub upper_dim: usize,
    pub lower_dim: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    /// Closure dimension of each generator set, top-down.
    pub dims: Vec<usize>,
    pub invariant: Vec<bool>,
    /// `strict[i]`: submodule `i+1` lies in submodule `i` with smaller dimension
    /// (`i = 0` compares against the component).
    pub strict: Vec<bool>,
    pub layers: Vec<LayerReport>,
    pub closures: Vec<ClosureReport>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.invariant.iter().all(|&b| b)
            && self.strict.iter().all(|&b| b)
            && self.layers.iter().all(|l| l.verdict.is_irreducible())
    }
}

/// Checks `comp ⊋ <G_1> ⊋ ... ⊋ <G_m> ⊋ 0` with every factor irreducible.
pub fn composition_series_check(
    ctx: &ModuleContext<'_>,
    chain: &[Vec<SparseVec>],
    opts: IrreducibilityOptions,
) -> ChainReport {
    let full = SubspaceBasis::full(ctx.comp);
    let mut subs = vec![full];
    let mut closures = Vec::new();
    for gens in chain {
        let (s, rep) = closure_from(ctx.comp, ctx.algebra, gens, None);
        subs.push(s);
        closures.push(rep);
    }
    subs.push(SubspaceBasis::zero(ctx.comp));
    let names: Vec<String> = std::iter::once("A".to_string())
        .chain((1..=chain.len()).map(|i| format!("<G{i}>")))
        .chain(std::iter::once("0".to_string()))
        .collect();
    let invariant = subs[1..subs.len() - 1]
        .iter()
        .map(|s| invariance_check(s, ctx.algebra))
        .collect();
    let strict = subs
        .windows(2)
        .map(|w| w[1].is_subspace_of(&w[0]) && w[1].dim() < w[0].dim())
        .collect();
    let layers = subs
        .windows(2)
        .enumerate()
        .map(|(i, w)| LayerReport {
            upper: names[i].clone(),
            lower: names[i + 1].clone(),
            upper_dim: w[0].dim(),
            lower_dim: w[1].dim(),
            verdict: is_irreducible(ctx, &w[0], Some(&w[1]), opts),
        })
        .collect();
    ChainReport {
        dims: subs[1..subs.len() - 1].iter().map(SubspaceBasis::dim).collect(),
        invariant,
        strict,
        layers,
        closures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectSumReport {
    pub part_dims: Vec<usize>,
    pub stacked_rank: usize,
    pub component_dim: usize,
    /// Monomials checked for coverage (all of them when finite).
    pub covered: usize,
    pub uncovered: usize,
    pub independent: bool,
    pub spanning: bool,
}

impl DirectSumReport {
    pub fn passed(&self) -> bool {
        self.independent && self.spanning
    }
}

/// Whether `comp` is the direct sum of `parts`. In a window, the interior
/// rows must be independent and every monomial with `|alpha| <= deg_cap -
/// buffer` must lie in their sum.
pub fn direct_sum_check(comp: &ComponentBasis, parts: &[&SubspaceBasis], buffer: u32) -> DirectSumReport {
    let part_dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
    let mut stacked = RowEchelon::new();
    for p in parts {
        for row in p.interior_rows() {
            stacked.insert(&row);
        }
    }
    let stacked_rank = stacked.rank();
    let independent = stacked_rank == part_dims.iter().sum::<usize>();
    let low = if comp.is_truncated() { comp.low_start(buffer) } else { 0 };
    let mut covered = 0;
    let mut uncovered = 0;
    for col in low..comp.len() {
        if stacked.contains(&comp.unit(col)) {
            covered += 1;
        } else {
            uncovered += 1;
        }
    }
    let spanning = if comp.is_truncated() {
        uncovered == 0
    } else {
        stacked_rank == comp.dim()
    };
    DirectSumReport {
        part_dims,
        stacked_rank,
        component_dim: comp.dim(),
        covered,
        uncovered,
        independent,
        spanning,
    }
}

/// Random nonzero vector supported on the given columns, for property tests
/// and sampling.
pub fn random_vector<R: Rng>(rng: &mut R, cols: std::ops::Range<usize>, density: f64) -> SparseVec {
    let mut v = Vec::new();
    for c in cols {
        if rng.gen_bool(density) {
            let x = rng.gen_range(-5i64..=5);
            if x != 0 {
                v.push((c, Scalar::from_int(x)));
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{basis_p, cartan_p, p_even_pos};
    use crate::superpoly::parse_poly;

    fn comp(n: usize, r: usize, k: i64, cap: Option<u32>) -> ComponentBasis {
        ComponentBasis::new(RepParams::new(n, r).unwrap(), k, cap).unwrap()
    }

    fn binom(a: i64, b: i64) -> usize {
        if b < 0 || a < b {
            return 0;
        }
        (0..b).fold(1usize, |acc, i| acc * (a - i) as usize / (i + 1) as usize)
    }

    #[test]
    fn finite_dimensions() {
        for n in 3..=4usize {
            for k in -1..=5i64 {
                let expected: usize = (0..=n as i64)
                    .filter(|&t| t <= k)
                    .map(|t| binom(n as i64, t) * binom(k - t + n as i64 - 1, n as i64 - 1))
                    .sum();
                assert_eq!(comp(n, 0, k, None).dim(), expected, "n={n} k={k}");
            }
        }
        assert_eq!(comp(3, 0, 1, None).dim(), 6);
        assert_eq!(comp(3, 0, 0, None).dim(), 1);
        assert_eq!(comp(3, 3, 3, None).dim(), 1);
        assert_eq!(comp(3, 3, 4, None).dim(), 0);
    }

    #[test]
    fn r_equals_n_enumeration() {
        let c = comp(3, 3, 0, None);
        for m in c.monomials() {
            assert_eq!(m.fermion_count() as u32, m.degree());
        }
        // sum_t C(3,t) * C(t+2,2)
        assert_eq!(c.dim(), 1 + 3 * 3 + 3 * 6 + 10);
    }

    #[test]
    fn window_requires_cap() {
        let params = RepParams::new(3, 1).unwrap();
        assert!(matches!(ComponentBasis::new(params, 0, None), Err(ModError::MissingCap { r: 1 })));
        let c = comp(3, 1, 0, Some(4));
        assert!(c.monomials().iter().all(|m| m.degree() <= 6));
        assert!(c.monomials()[c.interior_start()..].iter().all(|m| m.degree() <= 4));
        assert!(c.monomials().iter().all(|m| rep::degree(params, m) == 0));
    }

    #[test]
    fn coords_reject_wrong_degree() {
        let c = comp(3, 0, 2, None);
        let err = c.coords(&parse_poly("x1", 3).unwrap()).unwrap_err();
        assert!(matches!(err, ModError::WrongEigenvalue { found: 1, expected: 2, .. }));
    }

    #[test]
    fn natural_module_is_irreducible() {
        let c = comp(3, 0, 1, None);
        let p = OperatorSet::new(&c, &basis_p(3).unwrap()).unwrap();
        let pos = OperatorSet::new(&c, &p_even_pos(3).unwrap()).unwrap();
        let cartan = cartan_p(3).unwrap();
        let ctx = ModuleContext { comp: &c, algebra: &p, pos: &pos, cartan: &cartan };
        let full = SubspaceBasis::full(&c);
        assert_eq!(is_irreducible(&ctx, &full, None, Default::default()), Verdict::Irreducible);
        let (s, rep) = closure(&c, &p, &[parse_poly("x1", 3).unwrap()]).unwrap();
        assert_eq!(s.dim(), 6);
        assert!(rep.stabilized);
    }

    #[test]
    fn zero_generator_gives_zero_space() {
        let c = comp(3, 0, 2, None);
        let p = OperatorSet::new(&c, &basis_p(3).unwrap()).unwrap();
        let (s, rep) = closure(&c, &p, &[SuperPolynomial::zero(3)]).unwrap();
        assert!(s.is_zero());
        assert_eq!(rep.iterations, 0);
        assert!(invariance_check(&s, &p));
    }

    #[test]
    fn single_application_is_not_invariant() {
        let c = comp(3, 0, 3, None);
        let p = OperatorSet::new(&c, &basis_p(3).unwrap()).unwrap();
        let top = parse_poly("t1*t2*t3", 3).unwrap();
        let line = SubspaceBasis::span(&c, &[c.coords(&top).unwrap()]);
        assert!(!invariance_check(&line, &p));
        let (s, _) = closure(&c, &p, &[top]).unwrap();
        let (x, _) = closure(&c, &p, &[parse_poly("x1^3", 3).unwrap()]).unwrap();
        assert!(x.is_subspace_of(&s));
    }

    #[test]
    fn direct_sum_trivial() {
        let c = comp(3, 0, 2, None);
        let full = SubspaceBasis::full(&c);
        let zero = SubspaceBasis::zero(&c);
        assert!(direct_sum_check(&c, &[&full, &zero], 4).passed());
        assert!(!direct_sum_check(&c, &[&full, &full], 4).passed());
    }

    #[test]
    fn intersection_and_sum() {
        let c = comp(3, 0, 1, None);
        let e = |cols: &[usize]| SubspaceBasis::span(&c, &cols.iter().map(|&i| c.unit(i)).collect::<Vec<_>>());
        let (a, b) = (e(&[0, 1, 2]), e(&[2, 3]));
        assert_eq!(intersection(&c, &a, &b), e(&[2]));
        assert_eq!(sum(&c, &a, &b).dim(), 4);
        assert!(intersection(&c, &e(&[0]), &e(&[1])).is_zero());
    }

    #[test]
    fn empty_component_has_no_singular_vectors() {
        let c = comp(3, 3, 4, None);
        let pos = OperatorSet::new(&c, &p_even_pos(3).unwrap()).unwrap();
        let full = SubspaceBasis::full(&c);
        assert!(singular_vectors(&c, &pos, &cartan_p(3).unwrap(), &full, None).is_empty());
    }
}
