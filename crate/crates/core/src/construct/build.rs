//! Materializing ring expressions into tables.
//!
//! Element encodings are mixed-radix with the first coordinate most
//! significant:
//!
//! | node            | coordinates                                     |
//! |-----------------|-------------------------------------------------|
//! | `Z(n)`          | the residue `0..n`                              |
//! | `prod(R1..Rk)`  | `(a1, .., ak)`                                  |
//! | `Mk(R)`         | all `k²` entries, row-major                     |
//! | `Tk(R)`         | entries `(i, j)` with `i <= j`, row-major       |
//! | `eqdiagk(R)`    | the diagonal value, then entries `i < j` row-major |
//! | `idealize(R,M)` | `(r, m)`                                        |
//! | `skew(R,σ,n)`   | coefficients `(a0, .., a_{n-1})`                |
//!
//! Corner rings list their elements in ascending order of the parent index;
//! quotients list cosets by ascending minimal representative.

use super::expr::{EndoSpec, ModuleSpec, RingExpr};
use crate::error::{Error, Result};
use crate::ring::{ideal_generated_by, verify_ring_axioms, ElementId, RingTable, SubsetHandle};

pub const DEFAULT_SIZE_BUDGET: usize = 20_000;

/// Composite rings up to this order are axiom-checked after construction.
pub const DEFAULT_VERIFY_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub size_budget: usize,
    /// Run [`verify_ring_axioms`] on every composite node with at most this
    /// many elements. `Z(n)` leaves are never rechecked.
    pub verify_limit: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            size_budget: DEFAULT_SIZE_BUDGET,
            verify_limit: DEFAULT_VERIFY_LIMIT,
        }
    }
}

impl BuildOptions {
    pub fn with_budget(size_budget: usize) -> Self {
        BuildOptions {
            size_budget,
            ..Default::default()
        }
    }
}

/// A built ring together with the construction coordinates of its elements.
#[derive(Debug, Clone)]
pub struct BuiltRing {
    pub expr: RingExpr,
    pub table: RingTable,
    /// Human-readable coordinates, indexed by element.
    pub coords: Vec<String>,
}

pub fn build(expr: &RingExpr) -> Result<BuiltRing> {
    build_with(expr, &BuildOptions::default())
}

pub fn build_with(expr: &RingExpr, opts: &BuildOptions) -> Result<BuiltRing> {
    let (mut table, coords) = build_node(expr, opts)?;
    table.set_label(expr.to_string());
    Ok(BuiltRing {
        expr: expr.clone(),
        table,
        coords,
    })
}

fn budget_check(expr: &RingExpr, order: Option<u128>, opts: &BuildOptions) -> Result<usize> {
    match order {
        Some(o) if o <= opts.size_budget as u128 => Ok(o as usize),
        Some(o) => Err(Error::Capacity {
            expr: expr.to_string(),
            order: o,
            budget: opts.size_budget,
        }),
        None => Err(Error::Capacity {
            expr: expr.to_string(),
            order: u128::MAX,
            budget: opts.size_budget,
        }),
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

fn verify(table: RingTable, opts: &BuildOptions) -> Result<RingTable> {
    if table.order() <= opts.verify_limit {
        let report = verify_ring_axioms(&table);
        if !report.passed() {
            return Err(Error::NotARing {
                label: table.label().to_string(),
                detail: report.summary(),
            });
        }
    }
    Ok(table)
}

fn build_node(expr: &RingExpr, opts: &BuildOptions) -> Result<(RingTable, Vec<String>)> {
    match expr {
        RingExpr::Zn(n) => {
            if *n == 0 {
                return Err(Error::InvalidExpr("Z(n) needs n >= 1".into()));
            }
            budget_check(expr, Some(*n as u128), opts)?;
            let t = RingTable::zn(*n)?;
            Ok((t, (0..*n).map(|i| i.to_string()).collect()))
        }
        RingExpr::Prod(items) => {
            let parts: Vec<(RingTable, Vec<String>)> = items
                .iter()
                .map(|e| build_node(e, opts))
                .collect::<Result<_>>()?;
            let order = parts
                .iter()
                .try_fold(1u128, |acc, (t, _)| acc.checked_mul(t.order() as u128));
            budget_check(expr, order, opts)?;
            let tables: Vec<&RingTable> = parts.iter().map(|(t, _)| t).collect();
            let grid = CoordGrid::new(tables.iter().map(|t| t.order()).collect());
            let table = grid.table(
                expr.to_string(),
                |i| tables[i].zero(),
                |i| tables[i].one(),
                |i, a, b| tables[i].add(a, b),
                |i, a| tables[i].neg(a),
                |a, b, out| {
                    for i in 0..tables.len() {
                        out[i] = tables[i].mul(a[i], b[i]);
                    }
                },
            )?;
            let coords = grid.names(|i, v| parts[i].1[v.index()].clone(), "(", ",", ")");
            Ok((verify(table, opts)?, coords))
        }
        RingExpr::Mat(k, inner) | RingExpr::Tri(k, inner) | RingExpr::EqDiag(k, inner) => {
            let k = *k;
            if k == 0 {
                return Err(Error::InvalidExpr("matrix size must be at least 1".into()));
            }
            let (base, base_names) = build_node(inner, opts)?;
            let kind = match expr {
                RingExpr::Mat(..) => MatKind::Full,
                RingExpr::Tri(..) => MatKind::Upper,
                _ => MatKind::EqDiag,
            };
            let shape = MatShape::new(kind, k);
            let order = checked_pow(base.order(), shape.width());
            budget_check(expr, order, opts)?;
            let grid = CoordGrid::new(vec![base.order(); shape.width()]);
            let table = grid.table(
                expr.to_string(),
                |_| base.zero(),
                |c| {
                    if shape.is_diagonal_coord(c) {
                        base.one()
                    } else {
                        base.zero()
                    }
                },
                |_, a, b| base.add(a, b),
                |_, a| base.neg(a),
                |a, b, out| shape.mul(&base, a, b, out),
            )?;
            let coords = grid.names(|_, v| base_names[v.index()].clone(), "[", ",", "]");
            Ok((verify(table, opts)?, coords))
        }
        RingExpr::Idealize(inner, module) => {
            let (base, base_names) = build_node(inner, opts)?;
            let r = base.order();
            let (m_order, action): (usize, Box<dyn Fn(ElementId, ElementId) -> ElementId + '_>) =
                match module {
                    ModuleSpec::SelfModule => (r, Box::new(|a, m| base.mul(a, m))),
                    ModuleSpec::CyclicModule(m) => {
                        let n = match **inner {
                            RingExpr::Zn(n) => n,
                            _ => {
                                return Err(Error::InvalidModule(
                                    "a cyclic module Z(m) needs the base ring to be Z(n)".into(),
                                ))
                            }
                        };
                        let m = *m;
                        if m == 0 || n % m != 0 {
                            return Err(Error::InvalidModule(format!(
                                "Z({m}) is not a Z({n})-module: {m} does not divide {n}"
                            )));
                        }
                        (
                            m,
                            Box::new(move |a: ElementId, x: ElementId| {
                                ElementId(((a.index() * x.index()) % m) as u32)
                            }),
                        )
                    }
                };
            let order = (r as u128).checked_mul(m_order as u128);
            budget_check(expr, order, opts)?;
            let module_add = |a: ElementId, b: ElementId| match module {
                ModuleSpec::SelfModule => base.add(a, b),
                ModuleSpec::CyclicModule(_) => {
                    ElementId(((a.index() + b.index()) % m_order) as u32)
                }
            };
            let module_neg = |a: ElementId| match module {
                ModuleSpec::SelfModule => base.neg(a),
                ModuleSpec::CyclicModule(_) => ElementId(((m_order - a.index()) % m_order) as u32),
            };
            let module_zero = match module {
                ModuleSpec::SelfModule => base.zero(),
                ModuleSpec::CyclicModule(_) => ElementId(0),
            };
            let grid = CoordGrid::new(vec![r, m_order]);
            let table = grid.table(
                expr.to_string(),
                |i| if i == 0 { base.zero() } else { module_zero },
                |i| if i == 0 { base.one() } else { module_zero },
                |i, a, b| {
                    if i == 0 {
                        base.add(a, b)
                    } else {
                        module_add(a, b)
                    }
                },
                |i, a| if i == 0 { base.neg(a) } else { module_neg(a) },
                |a, b, out| {
                    out[0] = base.mul(a[0], b[0]);
                    out[1] = module_add(action(a[0], b[1]), action(b[0], a[1]));
                },
            )?;
            let coords = grid.names(
                |i, v| {
                    if i == 0 {
                        base_names[v.index()].clone()
                    } else {
                        v.to_string()
                    }
                },
                "(",
                ",",
                ")",
            );
            Ok((verify(table, opts)?, coords))
        }
        RingExpr::Corner(inner, f) => {
            let (base, base_names) = build_node(inner, opts)?;
            let f = base.element(*f)?;
            let (table, embed) = corner(&base, f)?;
            let coords = embed
                .iter()
                .map(|e| base_names[e.index()].clone())
                .collect();
            Ok((table, coords))
        }
        RingExpr::Quot(inner, gens) => {
            let (base, base_names) = build_node(inner, opts)?;
            let gens: Vec<ElementId> = gens
                .iter()
                .map(|&g| base.element(g))
                .collect::<Result<_>>()?;
            let ideal = ideal_generated_by(&base, &gens)?;
            let (table, proj) = quotient(&base, &ideal)?;
            let mut coords = vec![String::new(); table.order()];
            for x in base.elements().rev() {
                coords[proj[x.index()].index()] = format!("{}+I", base_names[x.index()]);
            }
            Ok((table, coords))
        }
        RingExpr::SkewPolyQuot(inner, sigma, n) => {
            let (base, base_names) = build_node(inner, opts)?;
            if *n == 0 {
                return Err(Error::InvalidExpr(
                    "truncation degree must be at least 1".into(),
                ));
            }
            budget_check(expr, checked_pow(base.order(), *n), opts)?;
            let sigma_map = endomorphism(inner, &base, sigma, opts)?;
            let (table, grid) = skew_table(&base, &sigma_map, *n, expr.to_string())?;
            let coords = grid.names(|_, v| base_names[v.index()].clone(), "(", ";", ")");
            Ok((verify(table, opts)?, coords))
        }
    }
}

/// Mixed-radix coordinate space over per-coordinate element sets.
struct CoordGrid {
    radices: Vec<usize>,
    order: usize,
}

impl CoordGrid {
    fn new(radices: Vec<usize>) -> Self {
        let order = radices.iter().product();
        CoordGrid { radices, order }
    }

    fn decode_all(&self) -> Vec<ElementId> {
        let w = self.radices.len();
        let mut out = vec![ElementId(0); self.order * w];
        for idx in 0..self.order {
            let mut rest = idx;
            for c in (0..w).rev() {
                out[idx * w + c] = ElementId((rest % self.radices[c]) as u32);
                rest /= self.radices[c];
            }
        }
        out
    }

    fn encode(&self, coords: &[ElementId]) -> usize {
        coords
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (v, r)| acc * r + v.index())
    }

    #[allow(clippy::too_many_arguments)]
    fn table(
        &self,
        label: String,
        zero: impl Fn(usize) -> ElementId,
        one: impl Fn(usize) -> ElementId,
        add: impl Fn(usize, ElementId, ElementId) -> ElementId,
        neg: impl Fn(usize, ElementId) -> ElementId,
        mul: impl Fn(&[ElementId], &[ElementId], &mut [ElementId]),
    ) -> Result<RingTable> {
        let w = self.radices.len();
        let n = self.order;
        let dec = self.decode_all();
        let at = |i: usize| &dec[i * w..(i + 1) * w];
        let mut add_t = Vec::with_capacity(n * n);
        let mut mul_t = Vec::with_capacity(n * n);
        let mut buf = vec![ElementId(0); w];
        for a in 0..n {
            for b in 0..n {
                let (xa, xb) = (at(a), at(b));
                for (c, slot) in buf.iter_mut().enumerate() {
                    *slot = add(c, xa[c], xb[c]);
                }
                add_t.push(self.encode(&buf) as u32);
                mul(at(a), at(b), &mut buf);
                mul_t.push(self.encode(&buf) as u32);
            }
        }
        let neg_t = (0..n)
            .map(|a| {
                let v: Vec<ElementId> = (0..w).map(|c| neg(c, at(a)[c])).collect();
                self.encode(&v) as u32
            })
            .collect();
        let zero_v: Vec<ElementId> = (0..w).map(zero).collect();
        let one_v: Vec<ElementId> = (0..w).map(one).collect();
        RingTable::new(
            label,
            n,
            add_t,
            mul_t,
            neg_t,
            self.encode(&zero_v),
            self.encode(&one_v),
        )
    }

    fn names(
        &self,
        name: impl Fn(usize, ElementId) -> String,
        open: &str,
        sep: &str,
        close: &str,
    ) -> Vec<String> {
        let w = self.radices.len();
        let dec = self.decode_all();
        (0..self.order)
            .map(|i| {
                let parts: Vec<String> = (0..w).map(|c| name(c, dec[i * w + c])).collect();
                format!("{open}{}{close}", parts.join(sep))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MatKind {
    Full,
    Upper,
    EqDiag,
}

/// Maps between stored coordinates and full `k × k` matrices.
struct MatShape {
    k: usize,
    /// `(row, col)` of each stored coordinate; for `EqDiag` coordinate 0 is
    /// the shared diagonal and `positions[0]` is `(0, 0)`.
    positions: Vec<(usize, usize)>,
    /// Stored coordinate behind each matrix entry, `None` for forced zeros.
    slots: Vec<Option<usize>>,
}

impl MatShape {
    fn new(kind: MatKind, k: usize) -> Self {
        let positions: Vec<(usize, usize)> = match kind {
            MatKind::Full => (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect(),
            MatKind::Upper => (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect(),
            MatKind::EqDiag => std::iter::once((0, 0))
                .chain((0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))))
                .collect(),
        };
        let mut slots = vec![None; k * k];
        for (c, &(i, j)) in positions.iter().enumerate() {
            slots[i * k + j] = Some(c);
        }
        if kind == MatKind::EqDiag {
            for i in 1..k {
                slots[i * k + i] = Some(0);
            }
        }
        MatShape {
            k,
            positions,
            slots,
        }
    }

    fn width(&self) -> usize {
        self.positions.len()
    }

    fn is_diagonal_coord(&self, c: usize) -> bool {
        let (i, j) = self.positions[c];
        i == j
    }

    fn mul(&self, base: &RingTable, a: &[ElementId], b: &[ElementId], out: &mut [ElementId]) {
        let k = self.k;
        for (c, &(i, j)) in self.positions.iter().enumerate() {
            let mut acc = base.zero();
            for l in 0..k {
                if let (Some(x), Some(y)) = (self.slots[i * k + l], self.slots[l * k + j]) {
                    acc = base.add(acc, base.mul(a[x], b[y]));
                }
            }
            out[c] = acc;
        }
    }
}

/// Resolve an endomorphism spec to a verified table on `base`.
fn endomorphism(
    base_expr: &RingExpr,
    base: &RingTable,
    sigma: &EndoSpec,
    opts: &BuildOptions,
) -> Result<Vec<ElementId>> {
    match sigma {
        EndoSpec::Identity => Ok(base.elements().collect()),
        EndoSpec::FactorPermutation(p) => {
            let items = match base_expr {
                RingExpr::Prod(items) => items,
                _ => {
                    return Err(Error::InvalidEndomorphism(
                        "factor permutations need a product base ring".into(),
                    ))
                }
            };
            let k = items.len();
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if p.len() != k || sorted != (0..k).collect::<Vec<_>>() {
                return Err(Error::InvalidEndomorphism(format!(
                    "{} is not a permutation of {k} factors",
                    sigma
                )));
            }
            let factors: Vec<RingTable> = items
                .iter()
                .map(|e| build_node(e, opts).map(|x| x.0))
                .collect::<Result<_>>()?;
            for i in 0..k {
                if !factors[i].same_tables(&factors[p[i]]) {
                    return Err(Error::InvalidEndomorphism(format!(
                        "factors {} and {} are not the same ring",
                        i + 1,
                        p[i] + 1
                    )));
                }
            }
            let grid = CoordGrid::new(factors.iter().map(|t| t.order()).collect());
            let dec = grid.decode_all();
            let map: Vec<ElementId> = (0..grid.order)
                .map(|a| {
                    let c = &dec[a * k..(a + 1) * k];
                    let permuted: Vec<ElementId> = (0..k).map(|i| c[p[i]]).collect();
                    ElementId(grid.encode(&permuted) as u32)
                })
                .collect();
            check_endomorphism(base, &map)?;
            Ok(map)
        }
    }
}

fn check_endomorphism(r: &RingTable, s: &[ElementId]) -> Result<()> {
    if s[r.one().index()] != r.one() {
        return Err(Error::InvalidEndomorphism("does not fix 1".into()));
    }
    for a in r.elements() {
        for b in r.elements() {
            if s[r.add(a, b).index()] != r.add(s[a.index()], s[b.index()])
                || s[r.mul(a, b).index()] != r.mul(s[a.index()], s[b.index()])
            {
                return Err(Error::InvalidEndomorphism(format!(
                    "not additive or multiplicative at ({a},{b})"
                )));
            }
        }
    }
    Ok(())
}

fn skew_table(
    base: &RingTable,
    sigma: &[ElementId],
    n: usize,
    label: String,
) -> Result<(RingTable, CoordGrid)> {
    // sigma_pow[i][a] = σ^i(a)
    let mut sigma_pow: Vec<Vec<ElementId>> = vec![base.elements().collect()];
    for i in 1..n {
        let prev = &sigma_pow[i - 1];
        sigma_pow.push(prev.iter().map(|&a| sigma[a.index()]).collect());
    }
    let grid = CoordGrid::new(vec![base.order(); n]);
    let table = grid.table(
        label,
        |_| base.zero(),
        |c| if c == 0 { base.one() } else { base.zero() },
        |_, a, b| base.add(a, b),
        |_, a| base.neg(a),
        |a, b, out| {
            // x^i·b = σ^i(b)·x^i, truncated at x^n
            for (k, slot) in out.iter_mut().enumerate() {
                let mut acc = base.zero();
                for i in 0..=k {
                    let twisted = sigma_pow[i][b[k - i].index()];
                    acc = base.add(acc, base.mul(a[i], twisted));
                }
                *slot = acc;
            }
        },
    )?;
    Ok((table, grid))
}

/// Truncated skew polynomial ring over an already-built ring.
///
/// `sigma` is given as a table on `base` and is checked to be a unital ring
/// endomorphism.
pub fn skew_poly_quot(
    base: &RingTable,
    sigma: &[ElementId],
    n: usize,
    opts: &BuildOptions,
) -> Result<RingTable> {
    if n == 0 {
        return Err(Error::InvalidExpr(
            "truncation degree must be at least 1".into(),
        ));
    }
    if sigma.len() != base.order() || sigma.iter().any(|s| s.index() >= base.order()) {
        return Err(Error::InvalidEndomorphism(
            "table has the wrong shape".into(),
        ));
    }
    let label = format!("skew({},<table>,{n})", base.label());
    let order = checked_pow(base.order(), n);
    match order {
        Some(o) if o <= opts.size_budget as u128 => {}
        _ => {
            return Err(Error::Capacity {
                expr: label,
                order: order.unwrap_or(u128::MAX),
                budget: opts.size_budget,
            })
        }
    }
    check_endomorphism(base, sigma)?;
    let (table, _) = skew_table(base, sigma, n, label)?;
    verify(table, opts)
}

/// Projection of a truncated skew polynomial ring onto its constant
/// coefficient, and the inclusion of constants. Indices follow the
/// mixed-radix encoding with `a0` most significant.
pub fn skew_constant_maps(
    base_order: usize,
    n: usize,
) -> (
    impl Fn(ElementId) -> ElementId,
    impl Fn(ElementId) -> ElementId,
) {
    let stride = base_order.pow(n.saturating_sub(1) as u32);
    (
        move |f: ElementId| ElementId((f.index() / stride) as u32),
        move |a: ElementId| ElementId((a.index() * stride) as u32),
    )
}

/// The corner ring `fRf` with unity `f`, and the embedding of its elements
/// into `R`.
pub fn corner(ring: &RingTable, f: ElementId) -> Result<(RingTable, Vec<ElementId>)> {
    ring.element(f.index())?;
    if ring.mul(f, f) != f {
        return Err(Error::InvalidIdempotent(f.index()));
    }
    let mut present = vec![false; ring.order()];
    for x in ring.elements() {
        present[ring.mul(ring.mul(f, x), f).index()] = true;
    }
    let embed: Vec<ElementId> = ring.elements().filter(|x| present[x.index()]).collect();
    let mut local = vec![u32::MAX; ring.order()];
    for (i, e) in embed.iter().enumerate() {
        local[e.index()] = i as u32;
    }
    let at = |x: ElementId| local[x.index()] as usize;
    let table = RingTable::from_fns(
        format!("corner({},{})", ring.label(), f),
        embed.len(),
        at(ring.zero()),
        at(f),
        |a, b| at(ring.add(embed[a], embed[b])),
        |a, b| at(ring.mul(embed[a], embed[b])),
        |a| at(ring.neg(embed[a])),
    )?;
    Ok((table, embed))
}

/// `R/I` with cosets numbered by ascending minimal representative, and the
/// projection `R → R/I`.
pub fn quotient(ring: &RingTable, ideal: &SubsetHandle) -> Result<(RingTable, Vec<ElementId>)> {
    ideal.check_ring(ring)?;
    if !ideal.is_ideal() {
        return Err(Error::InvalidIdeal);
    }
    let mut proj = vec![u32::MAX; ring.order()];
    let mut reps = Vec::new();
    for x in ring.elements() {
        if proj[x.index()] != u32::MAX {
            continue;
        }
        let class = reps.len() as u32;
        reps.push(x);
        for &i in ideal.members() {
            proj[ring.add(x, i).index()] = class;
        }
    }
    let cls = |x: ElementId| proj[x.index()] as usize;
    let table = RingTable::from_fns(
        format!("{}/{:?}", ring.label(), ideal.ids()),
        reps.len(),
        cls(ring.zero()),
        cls(ring.one()),
        |a, b| cls(ring.add(reps[a], reps[b])),
        |a, b| cls(ring.mul(reps[a], reps[b])),
        |a| cls(ring.neg(reps[a])),
    )?;
    Ok((table, proj.into_iter().map(ElementId).collect()))
}

/// Upper-triangular `k × k` matrices over `ring` with constant diagonal.
pub fn eq_diag_subring(k: usize, ring: &RingTable, opts: &BuildOptions) -> Result<RingTable> {
    if k < 2 {
        return Err(Error::InvalidExpr(
            "equal-diagonal subring needs k >= 2".into(),
        ));
    }
    let shape = MatShape::new(MatKind::EqDiag, k);
    let label = format!("eqdiag{k}({})", ring.label());
    let order = checked_pow(ring.order(), shape.width());
    match order {
        Some(o) if o <= opts.size_budget as u128 => {}
        _ => {
            return Err(Error::Capacity {
                expr: label,
                order: order.unwrap_or(u128::MAX),
                budget: opts.size_budget,
            })
        }
    }
    let grid = CoordGrid::new(vec![ring.order(); shape.width()]);
    let table = grid.table(
        label,
        |_| ring.zero(),
        |c| if c == 0 { ring.one() } else { ring.zero() },
        |_, a, b| ring.add(a, b),
        |_, a| ring.neg(a),
        |a, b, out| shape.mul(ring, a, b, out),
    )?;
    verify(table, opts)
}
