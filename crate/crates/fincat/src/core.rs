//! Category data model: dense tables for objects, morphisms, identities and
//! composition, validated eagerly against the category laws.

use std::fmt;
use thiserror::Error;

/// Object index, dense and local to one category.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

/// Morphism index, dense and local to one category.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub usize);

impl fmt::Debug for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{}", self.0)
    }
}

impl fmt::Debug for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

/// Hard limits on table sizes. The enumeration cores downstream are
/// exponential in the worst case, so oversized inputs are rejected up front.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeCaps {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps { max_objects: 64, max_morphisms: 512 }
    }
}

/// Unvalidated input tables. `comp` lists entries `(f, g, h)` meaning
/// `h = g ∘ f` (apply `f` first); pairs not listed are non-composable.
#[derive(Clone, Debug, Default)]
pub struct RawCategory {
    pub object_count: usize,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub identity: Vec<usize>,
    pub comp: Vec<(usize, usize, usize)>,
    pub object_labels: Option<Vec<String>>,
    pub morphism_labels: Option<Vec<String>>,
}

/// First law violation found by validation, with the offending entry.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("category has {count} objects, cap is {cap}")]
    TooManyObjects { count: usize, cap: usize },
    #[error("category has {count} morphisms, cap is {cap}")]
    TooManyMorphisms { count: usize, cap: usize },
    #[error("malformed tables: {detail}")]
    MalformedTables { detail: String },
    #[error("morphism {mor} references object {obj}, but there are only {object_count} objects")]
    BadObjectRef { mor: usize, obj: usize, object_count: usize },
    #[error("identity of object {obj} is morphism {mor}, which is not an endomorphism of {obj}")]
    BadIdentity { obj: usize, mor: usize },
    #[error("composition entry ({f}, {g}) -> {h} references a morphism out of range")]
    CompositionOutOfRange { f: usize, g: usize, h: usize },
    #[error("duplicate composition entry for pair ({f}, {g})")]
    DuplicateComposition { f: usize, g: usize },
    #[error("ill-typed composition: pair ({f}, {g}) has cod(f) != dom(g) but a composite is declared")]
    CompositionOfNonComposable { f: usize, g: usize },
    #[error("missing composition for composable pair ({f}, {g})")]
    MissingComposition { f: usize, g: usize },
    #[error("ill-typed composition: comp({f}, {g}) = {h} does not go dom(f) -> cod(g)")]
    IllTypedComposition { f: usize, g: usize, h: usize },
    #[error("identity law violated at morphism {f}: composing with the identity gives {got}")]
    IdentityLawViolated { f: usize, got: usize },
    #[error("associativity violated on ({f}, {g}, {h}): the two bracketings give {left} and {right}")]
    AssociativityViolated { f: usize, g: usize, h: usize, left: usize, right: usize },
}

/// A finite category as validated dense tables.
///
/// The composition convention is fixed globally: `comp(f, g)` is `g ∘ f`,
/// the morphism that applies `f` first and `g` second. It is defined exactly
/// when `cod(f) = dom(g)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    object_count: usize,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<MorId>,
    /// Dense row-major table, index `f * morphism_count + g`.
    comp: Vec<Option<MorId>>,
    object_labels: Option<Vec<String>>,
    morphism_labels: Option<Vec<String>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.object_count)
            .field("morphisms", &self.dom.len())
            .finish()
    }
}

/// Validates raw tables under the default size caps.
pub fn validate_category(raw: RawCategory) -> Result<FinCategory, CategoryError> {
    validate_category_with_caps(raw, SizeCaps::default())
}

/// Validates raw tables, checking every categorical law by exhaustion:
/// well-typedness of all composition entries, totality on composable pairs,
/// both identity laws, and the full associativity cube.
pub fn validate_category_with_caps(
    raw: RawCategory,
    caps: SizeCaps,
) -> Result<FinCategory, CategoryError> {
    let n = raw.object_count;
    let m = raw.dom.len();
    if n > caps.max_objects {
        return Err(CategoryError::TooManyObjects { count: n, cap: caps.max_objects });
    }
    if m > caps.max_morphisms {
        return Err(CategoryError::TooManyMorphisms { count: m, cap: caps.max_morphisms });
    }
    if raw.cod.len() != m {
        return Err(CategoryError::MalformedTables {
            detail: format!("dom has {} entries but cod has {}", m, raw.cod.len()),
        });
    }
    if raw.identity.len() != n {
        return Err(CategoryError::MalformedTables {
            detail: format!("{} objects but {} identity entries", n, raw.identity.len()),
        });
    }
    if let Some(labels) = &raw.object_labels {
        if labels.len() != n {
            return Err(CategoryError::MalformedTables {
                detail: format!("{} objects but {} object labels", n, labels.len()),
            });
        }
    }
    if let Some(labels) = &raw.morphism_labels {
        if labels.len() != m {
            return Err(CategoryError::MalformedTables {
                detail: format!("{} morphisms but {} morphism labels", m, labels.len()),
            });
        }
    }
    for f in 0..m {
        if raw.dom[f] >= n {
            return Err(CategoryError::BadObjectRef { mor: f, obj: raw.dom[f], object_count: n });
        }
        if raw.cod[f] >= n {
            return Err(CategoryError::BadObjectRef { mor: f, obj: raw.cod[f], object_count: n });
        }
    }
    for x in 0..n {
        let e = raw.identity[x];
        if e >= m || raw.dom[e] != x || raw.cod[e] != x {
            return Err(CategoryError::BadIdentity { obj: x, mor: e });
        }
    }

    let mut comp: Vec<Option<MorId>> = vec![None; m * m];
    for &(f, g, h) in &raw.comp {
        if f >= m || g >= m || h >= m {
            return Err(CategoryError::CompositionOutOfRange { f, g, h });
        }
        if comp[f * m + g].is_some() {
            return Err(CategoryError::DuplicateComposition { f, g });
        }
        if raw.cod[f] != raw.dom[g] {
            return Err(CategoryError::CompositionOfNonComposable { f, g });
        }
        if raw.dom[h] != raw.dom[f] || raw.cod[h] != raw.cod[g] {
            return Err(CategoryError::IllTypedComposition { f, g, h });
        }
        comp[f * m + g] = Some(MorId(h));
    }
    for f in 0..m {
        for g in 0..m {
            if raw.cod[f] == raw.dom[g] && comp[f * m + g].is_none() {
                return Err(CategoryError::MissingComposition { f, g });
            }
        }
    }
    for f in 0..m {
        let left = comp[raw.identity[raw.dom[f]] * m + f].unwrap().0;
        if left != f {
            return Err(CategoryError::IdentityLawViolated { f, got: left });
        }
        let right = comp[f * m + raw.identity[raw.cod[f]]].unwrap().0;
        if right != f {
            return Err(CategoryError::IdentityLawViolated { f, got: right });
        }
    }
    // Associativity scan over all composable triples. O(m^3) worst case,
    // acceptable under the size caps.
    for f in 0..m {
        for g in 0..m {
            if raw.cod[f] != raw.dom[g] {
                continue;
            }
            let gf = comp[f * m + g].unwrap().0;
            for h in 0..m {
                if raw.cod[g] != raw.dom[h] {
                    continue;
                }
                let hg = comp[g * m + h].unwrap().0;
                let left = comp[gf * m + h].unwrap().0;
                let right = comp[f * m + hg].unwrap().0;
                if left != right {
                    return Err(CategoryError::AssociativityViolated { f, g, h, left, right });
                }
            }
        }
    }

    Ok(FinCategory {
        object_count: n,
        dom: raw.dom.into_iter().map(ObjId).collect(),
        cod: raw.cod.into_iter().map(ObjId).collect(),
        identity: raw.identity.into_iter().map(MorId).collect(),
        comp,
        object_labels: raw.object_labels,
        morphism_labels: raw.morphism_labels,
    })
}

impl FinCategory {
    pub fn object_count(&self) -> usize {
        self.object_count
    }

    pub fn morphism_count(&self) -> usize {
        self.dom.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.object_count).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.dom.len()).map(MorId)
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.dom[f.0]
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.cod[f.0]
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identity[x.0]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.dom[f.0].0] == f
    }

    /// `g ∘ f` when `cod(f) = dom(g)`, `None` otherwise.
    pub fn comp(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.comp[f.0 * self.dom.len() + g.0]
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn compose(&self, f: MorId, g: MorId) -> MorId {
        match self.comp(f, g) {
            Some(h) => h,
            None => panic!(
                "compose({:?}, {:?}): cod {:?} != dom {:?}",
                f,
                g,
                self.cod(f),
                self.dom(g)
            ),
        }
    }

    /// All morphisms `a -> b`, in index order.
    pub fn hom_set(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        assert!(a.0 < self.object_count && b.0 < self.object_count, "object id out of range");
        self.morphisms().filter(|&f| self.dom(f) == a && self.cod(f) == b).collect()
    }

    pub fn object_label(&self, x: ObjId) -> Option<&str> {
        self.object_labels.as_ref().map(|v| v[x.0].as_str())
    }

    pub fn morphism_label(&self, f: MorId) -> Option<&str> {
        self.morphism_labels.as_ref().map(|v| v[f.0].as_str())
    }

    /// The opposite category: same indices, `dom`/`cod` swapped, and
    /// `comp_op(f, g) = comp(g, f)`. An involution on the tables.
    pub fn opposite(&self) -> FinCategory {
        let m = self.dom.len();
        let mut comp = vec![None; m * m];
        for f in 0..m {
            for g in 0..m {
                comp[f * m + g] = self.comp[g * m + f];
            }
        }
        FinCategory {
            object_count: self.object_count,
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            identity: self.identity.clone(),
            comp,
            object_labels: self.object_labels.clone(),
            morphism_labels: self.morphism_labels.clone(),
        }
    }

    /// Two-sided inverse of `f`, if any. At most one exists.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let a = self.dom(f);
        let b = self.cod(f);
        self.morphisms().find(|&g| {
            self.dom(g) == b
                && self.cod(g) == a
                && self.comp(f, g) == Some(self.identity(a))
                && self.comp(g, f) == Some(self.identity(b))
        })
    }

    fn objects_isomorphic(&self, a: ObjId, b: ObjId) -> bool {
        self.hom_set(a, b).into_iter().any(|f| self.inverse(f).is_some())
    }

    /// Every hom-set has at most one element.
    pub fn is_graph(&self) -> bool {
        let n = self.object_count;
        let mut seen = vec![false; n * n];
        for f in self.morphisms() {
            let slot = self.dom(f).0 * n + self.cod(f).0;
            if seen[slot] {
                return false;
            }
            seen[slot] = true;
        }
        true
    }

    /// A graph in which distinct objects are connected in at most one
    /// direction.
    pub fn is_partially_ordered_class(&self) -> bool {
        if !self.is_graph() {
            return false;
        }
        self.morphisms().all(|f| {
            let (a, b) = (self.dom(f), self.cod(f));
            a == b || self.hom_set(b, a).is_empty()
        })
    }

    /// No two distinct objects are isomorphic.
    pub fn is_skeletal(&self) -> bool {
        for a in self.objects() {
            for b in self.objects() {
                if a < b && self.objects_isomorphic(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Partition of objects into isomorphism classes. Returns the set of
    /// representatives (each the lowest index in its class) and the map
    /// sending every object to its representative.
    pub fn skeleton(&self) -> (Vec<ObjId>, Vec<ObjId>) {
        let n = self.object_count;
        let mut assign: Vec<Option<ObjId>> = vec![None; n];
        let mut reps = Vec::new();
        for a in self.objects() {
            if assign[a.0].is_some() {
                continue;
            }
            assign[a.0] = Some(a);
            reps.push(a);
            for b in (a.0 + 1)..n {
                let b = ObjId(b);
                if assign[b.0].is_none() && self.objects_isomorphic(a, b) {
                    assign[b.0] = Some(a);
                }
            }
        }
        (reps, assign.into_iter().map(|r| r.unwrap()).collect())
    }

    /// Discrete category: `n` objects and their identities only.
    pub fn discrete(n: usize) -> FinCategory {
        let raw = RawCategory {
            object_count: n,
            dom: (0..n).collect(),
            cod: (0..n).collect(),
            identity: (0..n).collect(),
            comp: (0..n).map(|i| (i, i, i)).collect(),
            ..RawCategory::default()
        };
        validate_category_with_caps(raw, SizeCaps { max_objects: usize::MAX, max_morphisms: usize::MAX })
            .expect("discrete tables are lawful")
    }

    /// Thin category of a partial order on `0..n`. One morphism `a -> b`
    /// whenever `le(a, b)`; fails validation if `le` is not a partial order.
    pub fn poset(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<FinCategory, CategoryError> {
        let mut pairs = Vec::new();
        let mut index = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                if le(a, b) {
                    index[a][b] = Some(pairs.len());
                    pairs.push((a, b));
                }
            }
        }
        let mut comp = Vec::new();
        for (f, &(a, b)) in pairs.iter().enumerate() {
            for (g, &(b2, c)) in pairs.iter().enumerate() {
                if b == b2 {
                    if let Some(h) = index[a][c] {
                        comp.push((f, g, h));
                    }
                }
            }
        }
        let raw = RawCategory {
            object_count: n,
            dom: pairs.iter().map(|&(a, _)| a).collect(),
            cod: pairs.iter().map(|&(_, b)| b).collect(),
            identity: (0..n).map(|a| index[a][a].expect("le must be reflexive")).collect(),
            comp,
            ..RawCategory::default()
        };
        validate_category(raw)
    }

    /// The chain `0 -> 1 -> ... -> n-1` as a thin category.
    pub fn chain_poset(n: usize) -> FinCategory {
        Self::poset(n, |a, b| a <= b).expect("chains are partial orders")
    }

    /// Builds and validates a category from endpoint tables and a composite
    /// function that is consulted on every composable pair.
    pub fn from_tables(
        object_count: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        identity: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<FinCategory, CategoryError> {
        let m = dom.len();
        let mut comp = Vec::new();
        for f in 0..m {
            for g in 0..m {
                if cod[f] == dom[g] {
                    comp.push((f, g, compose(f, g)));
                }
            }
        }
        validate_category(RawCategory {
            object_count,
            dom,
            cod,
            identity,
            comp,
            ..RawCategory::default()
        })
    }

    /// Dense hom-set index; entry `a * object_count + b` lists `hom(a, b)`
    /// in morphism order.
    pub fn hom_table(&self) -> Vec<Vec<MorId>> {
        let n = self.object_count;
        let mut table = vec![Vec::new(); n * n];
        for f in self.morphisms() {
            table[self.dom(f).0 * n + self.cod(f).0].push(f);
        }
        table
    }
}

/// A class of morphisms, either named or listed. Named classes are
/// evaluated per category by `classify::evaluate_class_spec`; they play the
/// roles of both the realizing class and the test class in the envelope and
/// imprint operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismClassSpec {
    AllMorphisms,
    Epi,
    Mono,
    Bim,
    SEpi,
    SMono,
    /// Dense epimorphisms of the topological setting. Kept as a name so
    /// inputs mentioning it parse, but rejected on evaluation: the notion
    /// has no finite-table semantics.
    DEpi,
    ExplicitSet(Vec<MorId>),
    Predicate(BuiltinPredicate),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinPredicate {
    Iso,
    ImmediateMono,
    ImmediateEpi,
    ExtremalMono,
    ExtremalEpi,
}

/// Functor from a finite shape into some target category, given by its
/// action tables. Validity is relative to the target.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub shape: FinCategory,
    pub object_assignment: Vec<ObjId>,
    pub morphism_assignment: Vec<MorId>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("assignment tables do not cover the shape")]
    WrongArity,
    #[error("assignment references ids outside the target category")]
    OutOfRange,
    #[error("morphism {mor:?} is sent to a morphism with the wrong endpoints")]
    EndpointMismatch { mor: MorId },
    #[error("identity of {obj:?} is not sent to an identity")]
    IdentityNotPreserved { obj: ObjId },
    #[error("composition of {f:?} and {g:?} is not preserved")]
    CompositionNotPreserved { f: MorId, g: MorId },
}

impl Diagram {
    pub fn new(
        shape: FinCategory,
        object_assignment: Vec<ObjId>,
        morphism_assignment: Vec<MorId>,
        target: &FinCategory,
    ) -> Result<Diagram, DiagramError> {
        let d = Diagram { shape, object_assignment, morphism_assignment };
        d.validate(target)?;
        Ok(d)
    }

    pub fn ob(&self, x: ObjId) -> ObjId {
        self.object_assignment[x.0]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.morphism_assignment[f.0]
    }

    pub fn validate(&self, target: &FinCategory) -> Result<(), DiagramError> {
        if self.object_assignment.len() != self.shape.object_count()
            || self.morphism_assignment.len() != self.shape.morphism_count()
        {
            return Err(DiagramError::WrongArity);
        }
        if self.object_assignment.iter().any(|x| x.0 >= target.object_count())
            || self.morphism_assignment.iter().any(|f| f.0 >= target.morphism_count())
        {
            return Err(DiagramError::OutOfRange);
        }
        for f in self.shape.morphisms() {
            let img = self.mor(f);
            if target.dom(img) != self.ob(self.shape.dom(f))
                || target.cod(img) != self.ob(self.shape.cod(f))
            {
                return Err(DiagramError::EndpointMismatch { mor: f });
            }
        }
        for x in self.shape.objects() {
            if self.mor(self.shape.identity(x)) != target.identity(self.ob(x)) {
                return Err(DiagramError::IdentityNotPreserved { obj: x });
            }
        }
        for f in self.shape.morphisms() {
            for g in self.shape.morphisms() {
                if let Some(h) = self.shape.comp(f, g) {
                    if target.comp(self.mor(f), self.mor(g)) != Some(self.mor(h)) {
                        return Err(DiagramError::CompositionNotPreserved { f, g });
                    }
                }
            }
        }
        Ok(())
    }
}
