//! Enumeration of the discrete isometry group ⟨r₀, r₁, r₂⟩.
//!
//! Finite groups close under breadth-first search over generator words;
//! infinite groups are cut off by a window: an element is retained only if it
//! moves the window center by at most `radius + margin`. The margin defaults
//! to twice the longest base edge so faces straddling the boundary stay
//! complete enough to classify.

use std::collections::{BTreeMap, VecDeque};

use crate::geom::isometry::{compose, order_of};
use crate::tol;
use crate::{Isometry, Vec3};

/// Default bound on generator-word length.
pub const DEFAULT_MAX_WORD: usize = 40;
/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;
/// Word-length bound used when certifying that a product has infinite order.
pub const INFINITE_ORDER_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("generator r{0} is not an involution")]
    NotInvolution(usize),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("element count exceeded the cap of {0} without closure")]
    BudgetExceeded(usize),
}

/// The three involutory generators of a polyhedron's symmetry group.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    gens: [Isometry; 3],
}

impl GeneratorSet {
    /// Validates that each rᵢ is an involution and that (r₀r₂)² = 1.
    pub fn new(r0: Isometry, r1: Isometry, r2: Isometry) -> Result<Self, GroupError> {
        let gens = [r0, r1, r2];
        for (i, g) in gens.iter().enumerate() {
            if !g.is_valid() || !g.is_involution() {
                return Err(GroupError::NotInvolution(i));
            }
        }
        if !compose(&compose(&r0, &r2), &compose(&r0, &r2)).is_identity(100.0 * tol::EPS_POINT) {
            return Err(GroupError::RelationViolated("(r0 r2)^2 = 1".into()));
        }
        Ok(Self { gens })
    }

    /// Test-only constructor that skips the involution checks.
    pub fn new_unchecked(r0: Isometry, r1: Isometry, r2: Isometry) -> Self {
        Self { gens: [r0, r1, r2] }
    }

    pub fn gen(&self, i: usize) -> &Isometry {
        &self.gens[i]
    }

    pub fn all(&self) -> &[Isometry; 3] {
        &self.gens
    }
}

/// Spherical window bounding the enumeration.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub center: Vec3,
    pub radius: f64,
}

impl Window {
    pub fn new(center: Vec3, radius: f64) -> Self {
        assert!(radius > 0.0, "window radius must be positive");
        Self { center, radius }
    }

    pub fn centered(radius: f64) -> Self {
        Self::new(Vec3::zero(), radius)
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        p.dist(&self.center) <= self.radius
    }
}

/// A group element together with the generator word producing it.
///
/// Words read left-to-right: `[a, b, c]` is rₐ∘r_b∘r_c (r_c applied first).
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub iso: Isometry,
    pub word: Vec<u8>,
}

/// Deduplicated, canonically ordered element list.
#[derive(Clone, Debug)]
pub struct GroupElements {
    pub elements: Vec<GroupElement>,
    /// True iff BFS exhausted without hitting the window or word bound.
    pub complete: bool,
}

impl GroupElements {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.elements.iter()
    }

    pub fn contains(&self, g: &Isometry) -> bool {
        self.elements
            .iter()
            .any(|e| e.iso.approx_eq(g, 10.0 * tol::EPS_POINT))
    }

    /// Elements fixing `p` within tolerance.
    pub fn stabilizer_of(&self, p: &Vec3) -> Vec<&GroupElement> {
        self.elements
            .iter()
            .filter(|e| e.iso.apply(p).approx_eq(p, tol::EPS_POINT))
            .collect()
    }
}

/// Quantized dedup key over the 12 isometry entries, on a 10·EPS_POINT grid.
fn element_key(g: &Isometry) -> [i64; 12] {
    let grid = 10.0 * tol::EPS_POINT;
    let mut key = [0i64; 12];
    let mut k = 0;
    for i in 0..3 {
        for j in 0..3 {
            key[k] = (g.linear.m[i][j] / grid).round() as i64;
            k += 1;
        }
    }
    for i in 0..3 {
        key[k] = (g.shift.coord(i) / grid).round() as i64;
        k += 1;
    }
    key
}

struct Closure {
    seen: BTreeMap<[i64; 12], usize>,
    elements: Vec<GroupElement>,
    complete: bool,
}

/// Options for the closure; `generators` indexes into the GeneratorSet.
struct ClosureOpts<'a> {
    gens: &'a GeneratorSet,
    letters: Vec<u8>,
    window: Option<Window>,
    margin: f64,
    max_word: usize,
    cap: usize,
}

/// BFS closure over words in the chosen generators.
///
/// Retention uses `|g(center) − center| ≤ radius + margin`; expansion allows
/// one extra step of slack so retained elements are never missed behind a
/// pruned intermediate.
fn closure(opts: ClosureOpts<'_>) -> Result<Closure, GroupError> {
    let mut seen = BTreeMap::new();
    let mut elements: Vec<GroupElement> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut complete = true;

    let step = opts
        .letters
        .iter()
        .map(|&i| {
            opts.gens
                .gen(i as usize)
                .apply(&opts.window.map_or(Vec3::zero(), |w| w.center))
                .dist(&opts.window.map_or(Vec3::zero(), |w| w.center))
        })
        .fold(0.0f64, f64::max);
    let retain_radius = opts.window.map(|w| w.radius + opts.margin);
    let expand_radius = retain_radius.map(|r| r + 2.0 * step);

    let id = GroupElement {
        iso: Isometry::identity(),
        word: Vec::new(),
    };
    seen.insert(element_key(&id.iso), 0);
    elements.push(id);
    queue.push_back(0);

    while let Some(idx) = queue.pop_front() {
        if elements[idx].word.len() >= opts.max_word {
            complete = false;
            continue;
        }
        let base = elements[idx].iso;
        let word = elements[idx].word.clone();
        for &letter in &opts.letters {
            let next = compose(&base, opts.gens.gen(letter as usize));
            let key = element_key(&next);
            if let Some(&idx) = seen.get(&key) {
                // collision: the grid must never merge distinct elements
                debug_assert!(
                    elements[idx].iso.approx_eq(&next, 100.0 * tol::EPS_POINT),
                    "spatial hash merged distinct group elements"
                );
                continue;
            }
            if let (Some(w), Some(er)) = (opts.window, expand_radius) {
                let moved = next.apply(&w.center).dist(&w.center);
                if moved > er {
                    complete = false;
                    continue;
                }
            }
            if elements.len() >= opts.cap {
                return Err(GroupError::BudgetExceeded(opts.cap));
            }
            let mut next_word = word.clone();
            next_word.push(letter);
            seen.insert(key, elements.len());
            elements.push(GroupElement {
                iso: next,
                word: next_word,
            });
            queue.push_back(elements.len() - 1);
        }
    }

    // final retention pass
    if let (Some(w), Some(rr)) = (opts.window, retain_radius) {
        let before = elements.len();
        elements.retain(|e| e.iso.apply(&w.center).dist(&w.center) <= rr);
        if elements.len() != before {
            complete = false;
        }
    }

    // canonical order: word length, then word letters, then quantized entries
    elements.sort_by(|a, b| {
        (a.word.len(), &a.word, element_key(&a.iso))
            .cmp(&(b.word.len(), &b.word, element_key(&b.iso)))
    });

    Ok(Closure {
        seen: BTreeMap::new(),
        elements,
        complete,
    })
}

/// Breadth-first closure over words in {r₀, r₁, r₂} within the window.
pub fn enumerate_elements(
    gens: &GeneratorSet,
    window: Window,
    max_word: usize,
) -> Result<GroupElements, GroupError> {
    enumerate_with_margin(gens, window, max_word, 0.0)
}

/// As [`enumerate_elements`] with an explicit retention margin.
pub fn enumerate_with_margin(
    gens: &GeneratorSet,
    window: Window,
    max_word: usize,
    margin: f64,
) -> Result<GroupElements, GroupError> {
    let c = closure(ClosureOpts {
        gens,
        letters: vec![0, 1, 2],
        window: Some(window),
        margin,
        max_word,
        cap: DEFAULT_ELEMENT_CAP,
    })?;
    let _ = c.seen;
    Ok(GroupElements {
        elements: c.elements,
        complete: c.complete,
    })
}

/// Closure of the subgroup generated by the listed generator indices.
/// No window pruning; intended for the finite stabilizer subgroups.
pub fn subgroup_closure(
    gens: &GeneratorSet,
    letters: &[usize],
    cap: usize,
) -> Result<GroupElements, GroupError> {
    let c = closure(ClosureOpts {
        gens,
        letters: letters.iter().map(|&i| i as u8).collect(),
        window: None,
        margin: 0.0,
        max_word: usize::MAX,
        cap,
    })?;
    Ok(GroupElements {
        elements: c.elements,
        complete: c.complete,
    })
}

/// Closure of ⟨rᵢ, rⱼ⟩ under the window rules.
///
/// `complete` is true iff rᵢrⱼ has finite order, in which case the window is
/// ignored and the whole dihedral group is returned.
pub fn dihedral_elements(
    gens: &GeneratorSet,
    i: usize,
    j: usize,
    window: Window,
) -> Result<GroupElements, GroupError> {
    assert_ne!(i, j, "dihedral_elements requires i != j");
    let product = compose(gens.gen(i), gens.gen(j));
    let finite = order_of(&product, INFINITE_ORDER_BOUND).is_some();
    let c = closure(ClosureOpts {
        gens,
        letters: vec![i as u8, j as u8],
        window: if finite { None } else { Some(window) },
        margin: 0.0,
        max_word: if finite { usize::MAX } else { DEFAULT_MAX_WORD * 4 },
        cap: DEFAULT_ELEMENT_CAP,
    })?;
    Ok(GroupElements {
        elements: c.elements,
        complete: finite && c.complete,
    })
}

/// Deduplicated window-restricted orbit of `p`, in deterministic order
/// (lexicographic after rounding to the EPS_POINT grid).
pub fn orbit(p: &Vec3, gens: &GeneratorSet, window: Window) -> Result<Vec<Vec3>, GroupError> {
    let elems = enumerate_elements(gens, window, DEFAULT_MAX_WORD)?;
    Ok(orbit_under(p, &elems, Some(window)))
}

/// Orbit of `p` under an already enumerated element list, optionally
/// restricted to the window.
pub fn orbit_under(p: &Vec3, elems: &GroupElements, window: Option<Window>) -> Vec<Vec3> {
    let mut index = PointIndex::new();
    for e in elems.iter() {
        let q = e.iso.apply(p);
        if let Some(w) = window {
            if !w.contains(&q) {
                continue;
            }
        }
        index.find_or_insert(&q);
    }
    let mut out = index.points().to_vec();
    out.sort_by_key(point_key);
    out
}

/// Quantized point key on a 10·EPS_POINT grid; also the sort key for
/// deterministic vertex ordering.
pub fn point_key(p: &Vec3) -> [i64; 3] {
    let grid = 10.0 * tol::EPS_POINT;
    [
        (p.x / grid).round() as i64,
        (p.y / grid).round() as i64,
        (p.z / grid).round() as i64,
    ]
}

/// Spatial index over points with tolerance-robust identification.
///
/// Plain quantized keys misidentify coordinates that land near a cell
/// boundary (the same vertex computed along two orbit paths can round to
/// different cells); lookups here probe the neighboring cells and compare
/// true distances.
#[derive(Clone, Debug, Default)]
pub struct PointIndex {
    cells: BTreeMap<[i64; 3], Vec<usize>>,
    points: Vec<Vec3>,
}

impl PointIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn find(&self, p: &Vec3) -> Option<usize> {
        let c = point_key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let key = [c[0] + dx, c[1] + dy, c[2] + dz];
                    if let Some(ids) = self.cells.get(&key) {
                        for &id in ids {
                            if self.points[id].approx_eq(p, tol::EPS_POINT) {
                                return Some(id);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Index of `p`, inserting it when new.
    pub fn find_or_insert(&mut self, p: &Vec3) -> usize {
        if let Some(id) = self.find(p) {
            return id;
        }
        let id = self.points.len();
        self.points.push(*p);
        self.cells.entry(point_key(p)).or_default().push(id);
        id
    }
}

/// Check the initial placement condition at `p` for the index set `subset`.
///
/// Pointwise: rᵢ(p) = p exactly for i ∉ subset and rᵢ(p) ≠ p for i ∈ subset.
/// Group-level: the stabilizer of `p` within the enumerated portion equals
/// the closure of ⟨rᵢ : i ∉ subset⟩ elementwise.
pub fn stabilizer_check(p: &Vec3, gens: &GeneratorSet, subset: &[usize]) -> bool {
    for i in 0..3 {
        let moved = !gens.gen(i).apply(p).approx_eq(p, tol::EPS_POINT);
        if subset.contains(&i) != moved {
            return false;
        }
    }
    let fixed: Vec<usize> = (0..3).filter(|i| !subset.contains(i)).collect();
    let expected = match subgroup_closure(gens, &fixed, 10_000) {
        Ok(c) if c.complete => c,
        _ => return false, // infinite stabilizer demanded: cannot hold
    };
    let window = Window::new(*p, 2.0);
    let Ok(elems) = enumerate_elements(gens, window, DEFAULT_MAX_WORD) else {
        return false;
    };
    let stab = elems.stabilizer_of(p);
    if stab.len() != expected.len() {
        return false;
    }
    stab.iter().all(|e| expected.contains(&e.iso))
}

/// Outcome of the Coxeter-type relation checks for a declared type {p, q}.
#[derive(Clone, Debug)]
pub struct RelationReport {
    /// Order of r₀r₁ within the probe bound, `None` meaning infinite.
    pub p_order: Option<usize>,
    /// Order of r₁r₂.
    pub q_order: Option<usize>,
    /// Order of r₀r₂.
    pub r02_order: Option<usize>,
    pub p_ok: bool,
    pub q_ok: bool,
    pub r02_ok: bool,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.p_ok && self.q_ok && self.r02_ok
    }
}

/// Verify the relations (r₀r₁)^p = (r₁r₂)^q = (r₀r₂)² = 1, with the order of
/// each product required to be exact. `p = None` declares an infinite p, in
/// which case r₀r₁ must have no power equal to the identity up to the probe
/// bound.
pub fn verify_relations(
    gens: &GeneratorSet,
    p: Option<usize>,
    q: usize,
) -> Result<RelationReport, GroupError> {
    let r01 = compose(gens.gen(0), gens.gen(1));
    let r12 = compose(gens.gen(1), gens.gen(2));
    let r02 = compose(gens.gen(0), gens.gen(2));
    let p_order = order_of(&r01, INFINITE_ORDER_BOUND);
    let q_order = order_of(&r12, INFINITE_ORDER_BOUND);
    let r02_order = order_of(&r02, 4);
    let report = RelationReport {
        p_order,
        q_order,
        r02_order,
        p_ok: match p {
            Some(p) => p_order == Some(p),
            None => p_order.is_none(),
        },
        q_ok: q_order == Some(q),
        r02_ok: r02_order == Some(2),
    };
    if !report.p_ok {
        return Err(GroupError::RelationViolated(format!(
            "(r0 r1) has order {:?}, expected {:?}",
            report.p_order, p
        )));
    }
    if !report.q_ok {
        return Err(GroupError::RelationViolated(format!(
            "(r1 r2) has order {:?}, expected {}",
            report.q_order, q
        )));
    }
    if !report.r02_ok {
        return Err(GroupError::RelationViolated(
            "(r0 r2) does not have order 2".into(),
        ));
    }
    Ok(report)
}
