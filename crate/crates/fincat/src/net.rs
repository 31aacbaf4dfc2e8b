//! Nets of epimorphisms and their local limits.
//!
//! A net assigns to every object `X` a family `N_X` of epimorphisms out of
//! `X`, thought of as a directed system of quotients.  Writing `ρ → σ` when
//! `σ` factors as `ι ∘ ρ` (the factor `ι` is unique because `ρ` is epi),
//! the axioms are:
//!
//!  (a) each `N_X` is non-empty and any two elements have a common
//!      refinement inside `N_X` itself;
//!  (b) the binding system of `N_X` — the codomains `Ran(σ)` together with
//!      the factors `ι_ρ^σ` — has a limit in the category;
//!  (c) for every morphism `α: X → Y` and every `τ ∈ N_Y` some `σ ∈ N_X`
//!      fills a commuting square `a ∘ σ = τ ∘ α`.  Such a `σ` is called a
//!      counterfort of `τ` along `α`.
//!
//! The limit of the binding system is the local limit `X_N`, with legs
//! `σ_N: X_N → Ran(σ)` and a canonical morphism `X → X_N` mediated by the
//! net elements themselves.  Counterforts make `X ↦ X_N` functorial: the
//! induced morphism `α_N` is the mediator of the legs assembled from any
//! counterfort, and the choice of counterfort does not matter.
//!
//! When the net sits inside a test class it generates (every test morphism
//! factors through a net element), the local-limit morphism computes
//! envelopes: directly in a realizing class of epimorphisms containing all
//! the local limits, and through its nodal decomposition in the classes of
//! all and of strong epimorphisms.  Each bridge is cross-checked against
//! the direct universal-property search.
//!
//! Nets of monomorphisms into each object are handled by the same engine
//! running on the opposite category; morphism ids are shared between the
//! two readings.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::classify::{self, evaluate_class_spec, ClassSpecError};
use crate::core::{Diagram, FinCategory, MorId, MorphismClassSpec, ObjId};
use crate::envelope::{self, EnvelopeResult};
use crate::exec;
use crate::factor;
use crate::limits;

/// A family of epimorphisms out of each object, keyed by their common
/// domain.  Objects absent from the map have an empty family, which fails
/// validation.  Element lists are kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    pub per_object: BTreeMap<ObjId, Vec<MorId>>,
}

impl Net {
    pub fn new(per_object: BTreeMap<ObjId, Vec<MorId>>) -> Net {
        let per_object = per_object
            .into_iter()
            .map(|(x, mut elems)| {
                elems.sort_unstable();
                elems.dedup();
                (x, elems)
            })
            .collect();
        Net { per_object }
    }

    /// The net whose only element at each object is its identity.
    pub fn trivial(c: &FinCategory) -> Net {
        Net::new(c.objects().map(|x| (x, vec![c.identity(x)])).collect())
    }

    pub fn elements(&self, x: ObjId) -> &[MorId] {
        self.per_object.get(&x).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// A defect found while validating a net, or encountered while computing
/// with one.  Validation collects every defect; the computing operations
/// stop at the first.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NetIssue {
    #[error("net element {element:?} at {object:?} is not an epimorphism out of that object")]
    ElementNotEpiFromObject { object: ObjId, element: MorId },
    #[error("the net has no elements at {object:?}")]
    EmptyAtObject { object: ObjId },
    #[error("net elements {sigma:?} and {sigma_prime:?} at {object:?} have no common refinement inside the net")]
    NotDirected { object: ObjId, sigma: MorId, sigma_prime: MorId },
    #[error("the binding system at {object:?} does not form a valid shape: {detail}")]
    InvalidBindingShape { object: ObjId, detail: String },
    #[error("the binding system at {object:?} has no limit")]
    MissingBindingLimit { object: ObjId },
    #[error("no net element at the domain of {alpha:?} fills a square onto {tau:?}")]
    MissingCounterfort { alpha: MorId, tau: MorId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetValidationReport {
    pub failures: Vec<NetIssue>,
}

impl NetValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Limit of the binding system at one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalLimit {
    pub x_n: ObjId,
    /// Leg `σ_N: X_N → Ran(σ)` for each net element `σ` at the object.
    pub legs: BTreeMap<MorId, MorId>,
    /// The canonical morphism `X → X_N`; `σ_N ∘ limit_morphism = σ`.
    pub limit_morphism: MorId,
}

/// The factor `ι` with `σ = ι ∘ ρ`, i.e. the witness that `ρ` refines `σ`.
/// For an epimorphism `ρ` the factor is unique; in general the lowest-index
/// one is returned.
pub fn binding_morphism(c: &FinCategory, rho: MorId, sigma: MorId) -> Option<MorId> {
    c.hom_set(c.cod(rho), c.cod(sigma))
        .into_iter()
        .find(|&i| c.comp(rho, i) == Some(sigma))
}

/// The unique `a` with `a ∘ sigma = tau ∘ alpha`, the filling that makes
/// `sigma` a counterfort of `tau` along `alpha`.  None when no filling
/// exists, when the endpoints do not line up, or when the filling fails to
/// be unique (possible only for a non-epi `sigma`).
pub fn counterfort_fill(c: &FinCategory, alpha: MorId, sigma: MorId, tau: MorId) -> Option<MorId> {
    let target = c.comp(alpha, tau)?;
    if c.dom(sigma) != c.dom(alpha) {
        return None;
    }
    let mut found = None;
    for a in c.hom_set(c.cod(sigma), c.cod(tau)) {
        if c.comp(sigma, a) == Some(target) {
            if found.is_some() {
                return None;
            }
            found = Some(a);
        }
    }
    found
}

/// Checks the three net axioms and that every listed element is an epi out
/// of its object, collecting a witness for each failure.  Axiom (b) is
/// checked constructively: the binding limit is computed, never assumed.
pub fn validate_net(c: &FinCategory, n: &Net) -> NetValidationReport {
    let mut failures = Vec::new();
    for (&x, elems) in &n.per_object {
        for &s in elems {
            let sane = x.0 < c.object_count() && s.0 < c.morphism_count() && c.dom(s) == x;
            if !sane || !classify::is_epi(c, s) {
                failures.push(NetIssue::ElementNotEpiFromObject { object: x, element: s });
            }
        }
    }
    if !failures.is_empty() {
        // Out-of-range or non-epi elements poison everything downstream.
        return NetValidationReport { failures };
    }
    for x in c.objects() {
        let elems = n.elements(x);
        if elems.is_empty() {
            failures.push(NetIssue::EmptyAtObject { object: x });
            continue;
        }
        for (i, &s) in elems.iter().enumerate() {
            for &t in &elems[i + 1..] {
                let directed = elems.iter().any(|&r| {
                    binding_morphism(c, r, s).is_some() && binding_morphism(c, r, t).is_some()
                });
                if !directed {
                    failures.push(NetIssue::NotDirected { object: x, sigma: s, sigma_prime: t });
                }
            }
        }
        if let Err(issue) = binding_limit(c, n, x) {
            failures.push(issue);
        }
    }
    for alpha in c.morphisms() {
        for &tau in n.elements(c.cod(alpha)) {
            let has = n
                .elements(c.dom(alpha))
                .iter()
                .any(|&sigma| counterfort_fill(c, alpha, sigma, tau).is_some());
            if !has {
                failures.push(NetIssue::MissingCounterfort { alpha, tau });
            }
        }
    }
    NetValidationReport { failures }
}

/// Dual validation: `per_object` lists monomorphisms into each object, and
/// the axioms are read in the opposite category, where the same ids form a
/// net of epimorphisms.
pub fn validate_mono_net(c: &FinCategory, n: &Net) -> NetValidationReport {
    validate_net(&c.opposite(), n)
}

struct BindingLimit {
    /// Net elements at the object, in sorted order; shape object `i` of the
    /// binding diagram is `Ran(elems[i])`.
    elems: Vec<MorId>,
    result: limits::LimitResult,
}

/// Builds the binding diagram of `N_x` — a thin shape with one object per
/// net element and one arrow per refinement — and takes its limit.  The
/// refinement relation is reflexive and transitive but not antisymmetric,
/// so the shape is assembled directly from the relation's pairs.
fn binding_limit(c: &FinCategory, n: &Net, x: ObjId) -> Result<BindingLimit, NetIssue> {
    let elems: Vec<MorId> = n.elements(x).to_vec();
    if elems.is_empty() {
        return Err(NetIssue::EmptyAtObject { object: x });
    }
    let k = elems.len();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if binding_morphism(c, elems[i], elems[j]).is_some() {
                pairs.push((i, j));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(p, &ij)| (ij, p)).collect();
    let shape = FinCategory::from_tables(
        k,
        pairs.iter().map(|&(i, _)| i).collect(),
        pairs.iter().map(|&(_, j)| j).collect(),
        (0..k).map(|i| index[&(i, i)]).collect(),
        |f, g| index[&(pairs[f].0, pairs[g].1)],
    )
    .map_err(|e| NetIssue::InvalidBindingShape { object: x, detail: e.to_string() })?;
    let diagram = Diagram::new(
        shape,
        elems.iter().map(|&s| c.cod(s)).collect(),
        pairs
            .iter()
            .map(|&(i, j)| binding_morphism(c, elems[i], elems[j]).expect("pair is related"))
            .collect(),
        c,
    )
    .map_err(|e| NetIssue::InvalidBindingShape { object: x, detail: e.to_string() })?;
    let result =
        limits::limit(c, &diagram).ok_or(NetIssue::MissingBindingLimit { object: x })?;
    Ok(BindingLimit { elems, result })
}

/// The net elements themselves form a cone over the binding system, so the
/// limit hands back a unique mediator `X → X_N`.
fn limit_morphism_of(c: &FinCategory, x: ObjId, bl: &BindingLimit) -> MorId {
    let _ = c;
    bl.result
        .mediators
        .get(&limits::Cone { apex: x, legs: bl.elems.clone() })
        .copied()
        .expect("internal invariant violated: the net elements do not form a cone over the binding system")
}

/// Limit of the binding system at `x` together with the canonical morphism
/// from `x` into it.
pub fn local_limit(c: &FinCategory, n: &Net, x: ObjId) -> Result<LocalLimit, NetIssue> {
    let bl = binding_limit(c, n, x)?;
    let limit_morphism = limit_morphism_of(c, x, &bl);
    let legs = bl
        .elems
        .iter()
        .copied()
        .zip(bl.result.cone.legs.iter().copied())
        .collect();
    Ok(LocalLimit { x_n: bl.result.cone.apex, legs, limit_morphism })
}

/// Dual: the inductive limit of a family of monomorphisms into `x`.  Read
/// in `c`, the legs run `Dom(σ) → X_N` and the limit morphism `X_N → x`.
pub fn mono_local_limit(c: &FinCategory, n: &Net, x: ObjId) -> Result<LocalLimit, NetIssue> {
    local_limit(&c.opposite(), n, x)
}

/// The morphism `α_N: X_N → Y_N` induced on local limits by `α: X → Y`.
///
/// For every `τ ∈ N_Y` the lowest-index counterfort `σ` gives a leg
/// `fill ∘ σ_N : X_N → Ran(τ)`; every other counterfort is checked to give
/// the same leg.  The legs form a cone over the binding system of `N_Y`,
/// and `α_N` is its unique mediator, satisfying
/// `α_N ∘ (lim N_X) = (lim N_Y) ∘ α`.
pub fn induced_morphism(c: &FinCategory, n: &Net, alpha: MorId) -> Result<MorId, NetIssue> {
    let x = c.dom(alpha);
    let y = c.cod(alpha);
    let blx = binding_limit(c, n, x)?;
    let bly = binding_limit(c, n, y)?;
    let mut legs = Vec::with_capacity(bly.elems.len());
    for &tau in &bly.elems {
        let mut leg = None;
        for (i, &sigma) in blx.elems.iter().enumerate() {
            let Some(fill) = counterfort_fill(c, alpha, sigma, tau) else {
                continue;
            };
            let candidate = c.compose(blx.result.cone.legs[i], fill);
            match leg {
                None => leg = Some(candidate),
                Some(first) => assert_eq!(
                    first, candidate,
                    "internal invariant violated: the induced leg depends on the counterfort choice"
                ),
            }
        }
        legs.push(leg.ok_or(NetIssue::MissingCounterfort { alpha, tau })?);
    }
    let apex = blx.result.cone.apex;
    let induced = bly
        .result
        .mediators
        .get(&limits::Cone { apex, legs })
        .copied()
        .expect("internal invariant violated: the induced legs do not form a cone over the binding system");
    assert_eq!(
        c.comp(limit_morphism_of(c, x, &blx), induced),
        c.comp(alpha, limit_morphism_of(c, y, &bly)),
        "internal invariant violated: the induced morphism does not commute with the local limits"
    );
    Ok(induced)
}

/// Dual: the morphism induced by `α: X → Y` on mono-net limits, again
/// running `X_N → Y_N` when read in `c`.
pub fn mono_induced_morphism(c: &FinCategory, n: &Net, alpha: MorId) -> Result<MorId, NetIssue> {
    induced_morphism(&c.opposite(), n, alpha)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NetEnvelopeError {
    #[error("the realizing class contains the non-epimorphism {0:?}")]
    RealizingClassNotEpis(MorId),
    #[error("the local-limit morphism {limit_morphism:?} at {object:?} is outside the realizing class")]
    LimitOutsideRealizingClass { object: ObjId, limit_morphism: MorId },
    #[error("net element {0:?} is outside the test class")]
    NetNotInsideTestClass(MorId),
    #[error("test morphism {0:?} does not factor through any net element at its domain")]
    TestClassNotGenerated(MorId),
    #[error(transparent)]
    Net(#[from] NetIssue),
    #[error(transparent)]
    Class(#[from] ClassSpecError),
}

/// Envelope data extracted from one local limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetEnvelopes {
    pub local: LocalLimit,
    /// Envelope in the supplied realizing class: the local-limit morphism
    /// itself.  Present when the class consists of epimorphisms and every
    /// object's local-limit morphism belongs to it; otherwise
    /// `omega_failure` records which part failed.
    pub in_omega: Option<EnvelopeResult>,
    pub omega_failure: Option<NetEnvelopeError>,
    /// Envelope among all epimorphisms: the epi part of the maximal
    /// factorization of the local-limit morphism.  Present when every
    /// morphism of the category has a nodal decomposition.
    pub in_epi: Option<EnvelopeResult>,
    /// Envelope among strong epimorphisms: `coim∞` of the local-limit
    /// morphism.  Present under the same condition as `in_epi`.
    pub in_sepi: Option<EnvelopeResult>,
}

/// Envelopes of `x` with respect to `phi` read off the net's local limit.
///
/// Requires a valid net whose elements all lie in the test class while the
/// test class factors through the net (the net generates it on the
/// inside).  The realizing-class conditions gate only `in_omega`; the
/// nodal-decomposition bridges `in_epi`/`in_sepi` are computed whenever the
/// whole category decomposes nodally.  Every returned envelope is verified
/// terminal among the corresponding extensions and cross-checked against
/// the direct search.
pub fn envelope_via_net(
    c: &FinCategory,
    n: &Net,
    x: ObjId,
    omega: &MorphismClassSpec,
    phi: &MorphismClassSpec,
) -> Result<NetEnvelopes, NetEnvelopeError> {
    let om = evaluate_class_spec(c, omega)?;
    let ph = evaluate_class_spec(c, phi)?;
    envelope_via_net_sets(c, n, x, &om, &ph)
}

/// Net-driven imprint of `x`.  The classes are evaluated in `c` itself, so
/// named classes keep their meaning; the epi engine then runs on the
/// opposite category.  In the result the epi-named fields read dually:
/// `in_epi` is the imprint among monomorphisms of `c`, `in_sepi` among its
/// strong monomorphisms, and the local limit is the inductive one.
pub fn imprint_via_net(
    c: &FinCategory,
    n: &Net,
    x: ObjId,
    omega: &MorphismClassSpec,
    phi: &MorphismClassSpec,
) -> Result<NetEnvelopes, NetEnvelopeError> {
    let om = evaluate_class_spec(c, omega)?;
    let ph = evaluate_class_spec(c, phi)?;
    envelope_via_net_sets(&c.opposite(), n, x, &om, &ph)
}

fn envelope_via_net_sets(
    c: &FinCategory,
    n: &Net,
    x: ObjId,
    om: &[MorId],
    ph: &[MorId],
) -> Result<NetEnvelopes, NetEnvelopeError> {
    assert!(x.0 < c.object_count(), "object out of range");
    let report = validate_net(c, n);
    if let Some(first) = report.failures.first() {
        return Err(NetEnvelopeError::Net(first.clone()));
    }

    // The net generates the test class on the inside: N ⊆ Φ ⊆ Mor ∘ N.
    let ph_set: BTreeSet<MorId> = ph.iter().copied().collect();
    for elems in n.per_object.values() {
        for &s in elems {
            if !ph_set.contains(&s) {
                return Err(NetEnvelopeError::NetNotInsideTestClass(s));
            }
        }
    }
    for &f in ph {
        let generated = n.elements(c.dom(f)).iter().any(|&s| {
            c.hom_set(c.cod(s), c.cod(f))
                .into_iter()
                .any(|chi| c.comp(s, chi) == Some(f))
        });
        if !generated {
            return Err(NetEnvelopeError::TestClassNotGenerated(f));
        }
    }

    let lims = exec::map_range(exec::mode(), c.object_count(), |i| {
        local_limit(c, n, ObjId(i)).expect("a valid net has a limit at every object")
    });
    let local = lims[x.0].clone();

    let om_set: BTreeSet<MorId> = om.iter().copied().collect();
    let omega_failure = om
        .iter()
        .find(|&&s| !classify::is_epi(c, s))
        .map(|&bad| NetEnvelopeError::RealizingClassNotEpis(bad))
        .or_else(|| {
            lims.iter()
                .enumerate()
                .find(|(_, ll)| !om_set.contains(&ll.limit_morphism))
                .map(|(i, ll)| NetEnvelopeError::LimitOutsideRealizingClass {
                    object: ObjId(i),
                    limit_morphism: ll.limit_morphism,
                })
        });
    let in_omega = if omega_failure.is_some() {
        None
    } else {
        let exts = envelope::extensions_from_sets(c, x, om, ph);
        let centered = envelope::envelope_result_for(c, &exts, local.limit_morphism).expect(
            "internal invariant violated: the local limit is not terminal among the extensions",
        );
        let direct = envelope::envelope_from_extensions(c, &exts)
            .expect("internal invariant violated: direct envelope search found nothing");
        assert!(
            envelope::envelopes_isomorphic(c, &centered, &direct),
            "internal invariant violated: net route and direct search disagree in the realizing class"
        );
        Some(centered)
    };

    let (in_epi, in_sepi) = if factor::has_nodal_decompositions(c) {
        let nd = factor::nodal_decomposition(c, local.limit_morphism)
            .expect("every morphism was just checked to decompose");
        let eps_max = c.compose(nd.coim_inf, nd.red_inf);
        (
            Some(centered_envelope(c, x, &MorphismClassSpec::Epi, ph, eps_max)),
            Some(centered_envelope(c, x, &MorphismClassSpec::SEpi, ph, nd.coim_inf)),
        )
    } else {
        (None, None)
    };

    Ok(NetEnvelopes { local, in_omega, omega_failure, in_epi, in_sepi })
}

fn centered_envelope(
    c: &FinCategory,
    x: ObjId,
    omega: &MorphismClassSpec,
    ph: &[MorId],
    rho: MorId,
) -> EnvelopeResult {
    let om = evaluate_class_spec(c, omega).expect("named classes always evaluate");
    let exts = envelope::extensions_from_sets(c, x, &om, ph);
    let centered = envelope::envelope_result_for(c, &exts, rho).expect(
        "internal invariant violated: the decomposition part is not terminal among the extensions",
    );
    let direct = envelope::envelope_from_extensions(c, &exts)
        .expect("internal invariant violated: direct envelope search found nothing");
    assert!(
        envelope::envelopes_isomorphic(c, &centered, &direct),
        "internal invariant violated: nodal route and direct search disagree"
    );
    centered
}

/// Whether the counterfort `sigma` (with its filling, `fill ∘ σ = τ ∘ α`)
/// is relatively split: every `δ` with `δ ∘ α = σ` also satisfies
/// `fill ∘ δ = τ`.
pub fn counterfort_is_relatively_split(
    c: &FinCategory,
    alpha: MorId,
    sigma: MorId,
    fill: MorId,
    tau: MorId,
) -> bool {
    c.hom_set(c.cod(alpha), c.cod(sigma))
        .into_iter()
        .all(|d| c.comp(alpha, d) != Some(sigma) || c.comp(d, fill) == Some(tau))
}

/// First pair `(α, τ ∈ N_{cod α})` without a relatively split counterfort;
/// None means the net is relatively split.  A pair with no counterfort at
/// all also comes back as a witness, since it certainly has no split one.
pub fn relative_splitting_violation(c: &FinCategory, n: &Net) -> Option<(MorId, MorId)> {
    for alpha in c.morphisms() {
        for &tau in n.elements(c.cod(alpha)) {
            let split = n.elements(c.dom(alpha)).iter().any(|&sigma| {
                counterfort_fill(c, alpha, sigma, tau)
                    .is_some_and(|fill| counterfort_is_relatively_split(c, alpha, sigma, fill, tau))
            });
            if !split {
                return Some((alpha, tau));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> FinCategory {
        FinCategory::chain_poset(3)
    }

    /// All morphisms out of each object; in a poset every one is epi.
    fn full_net(c: &FinCategory) -> Net {
        Net::new(
            c.objects()
                .map(|x| (x, c.morphisms().filter(|&f| c.dom(f) == x).collect()))
                .collect(),
        )
    }

    /// One non-identity element per object where possible: the single step
    /// `x → x+1` at 0 and 1, the identity at the top.
    fn step_net() -> Net {
        Net::new(
            [
                (ObjId(0), vec![MorId(1)]),
                (ObjId(1), vec![MorId(4)]),
                (ObjId(2), vec![MorId(5)]),
            ]
            .into_iter()
            .collect(),
        )
    }

    /// Two epis out of a common source with unrelated codomains.
    fn two_quotients() -> FinCategory {
        FinCategory::from_tables(
            3,
            vec![0, 1, 2, 0, 0],
            vec![0, 1, 2, 1, 2],
            vec![0, 1, 2],
            |f, g| if f <= 2 { g } else { f },
        )
        .unwrap()
    }

    /// A split mono `α: X → Y` with retraction `δ`, the idempotent
    /// `e = α∘δ`, and a quotient `τ: Y → T` that distinguishes `e` from the
    /// identity (`τ∘e = τ̄ ≠ τ`).  Indices: 0..=2 identities of X, Y, T;
    /// 3 = α, 4 = δ, 5 = e, 6 = τ, 7 = τ̄, 8 = σ = τ∘α.
    fn split_mono_category() -> FinCategory {
        FinCategory::from_tables(
            3,
            vec![0, 1, 2, 0, 1, 1, 1, 1, 0],
            vec![0, 1, 2, 1, 0, 1, 2, 2, 2],
            vec![0, 1, 2],
            |f, g| match (f, g) {
                (0..=2, g) => g,
                (f, 0..=2) => f,
                (3, 4) => 0,
                (3, 5) => 3,
                (3, 6) | (3, 7) => 8,
                (4, 3) => 5,
                (4, 8) => 7,
                (5, 4) => 4,
                (5, 5) => 5,
                (5, 6) | (5, 7) => 7,
                _ => unreachable!("no other pairs compose"),
            },
        )
        .unwrap()
    }

    #[test]
    fn trivial_net_is_valid_with_identity_limits() {
        let c = chain();
        let n = Net::trivial(&c);
        assert!(validate_net(&c, &n).is_valid());
        for x in c.objects() {
            let ll = local_limit(&c, &n, x).unwrap();
            assert_eq!(ll.x_n, x);
            assert_eq!(ll.limit_morphism, c.identity(x));
        }
        for alpha in c.morphisms() {
            assert_eq!(induced_morphism(&c, &n, alpha).unwrap(), alpha);
        }
    }

    #[test]
    fn full_epi_net_on_chain_is_valid() {
        let c = chain();
        let n = full_net(&c);
        assert!(validate_net(&c, &n).is_valid());
        // The identity is the finest element, so the binding limit sits at
        // the object itself.
        let ll = local_limit(&c, &n, ObjId(0)).unwrap();
        assert_eq!(ll.x_n, ObjId(0));
        assert_eq!(ll.limit_morphism, MorId(0));
    }

    #[test]
    fn identity_in_the_net_pins_the_limit_at_the_object() {
        let c = chain();
        let mut per = full_net(&c).per_object;
        per.insert(ObjId(0), vec![MorId(0), MorId(1)]);
        let n = Net::new(per);
        assert!(validate_net(&c, &n).is_valid());
        // {1_0, 0→1} has the identity as its finest element, so the binding
        // system keeps an initial vertex at 0 and the limit is 1_0; a limit
        // at 1 would need a leg 1 → 0, which the chain does not have.
        let ll = local_limit(&c, &n, ObjId(0)).unwrap();
        assert_eq!(ll.x_n, ObjId(0));
        assert_eq!(ll.limit_morphism, MorId(0));
        assert_eq!(ll.legs[&MorId(1)], MorId(1));
    }

    #[test]
    fn single_element_binding_system_lands_at_its_codomain() {
        let c = chain();
        let n = step_net();
        assert!(validate_net(&c, &n).is_valid());
        let ll = local_limit(&c, &n, ObjId(0)).unwrap();
        assert_eq!(ll.x_n, ObjId(1));
        assert_eq!(ll.limit_morphism, MorId(1));
        assert_eq!(ll.legs[&MorId(1)], MorId(3));
    }

    #[test]
    fn induced_morphisms_preserve_identities_and_composites() {
        let c = chain();
        let n = step_net();
        let id0_n = induced_morphism(&c, &n, MorId(0)).unwrap();
        let ll0 = local_limit(&c, &n, ObjId(0)).unwrap();
        assert_eq!(id0_n, c.identity(ll0.x_n));
        // m2 = m4 ∘ m1 in the chain.
        let a_n = induced_morphism(&c, &n, MorId(1)).unwrap();
        let b_n = induced_morphism(&c, &n, MorId(4)).unwrap();
        let ab_n = induced_morphism(&c, &n, MorId(2)).unwrap();
        assert_eq!(c.comp(a_n, b_n), Some(ab_n));
    }

    #[test]
    fn binding_morphisms_compose_coherently() {
        let c = chain();
        let i01 = binding_morphism(&c, MorId(0), MorId(1)).unwrap();
        let i12 = binding_morphism(&c, MorId(1), MorId(2)).unwrap();
        let i02 = binding_morphism(&c, MorId(0), MorId(2)).unwrap();
        assert_eq!(c.comp(i01, i12), Some(i02));
    }

    #[test]
    fn undirected_pair_is_reported() {
        let c = two_quotients();
        let n = Net::new(
            [
                (ObjId(0), vec![MorId(3), MorId(4)]),
                (ObjId(1), vec![MorId(1)]),
                (ObjId(2), vec![MorId(2)]),
            ]
            .into_iter()
            .collect(),
        );
        let report = validate_net(&c, &n);
        assert_eq!(
            report.failures,
            vec![NetIssue::NotDirected {
                object: ObjId(0),
                sigma: MorId(3),
                sigma_prime: MorId(4),
            }]
        );
    }

    #[test]
    fn missing_counterfort_is_reported_with_its_square() {
        let c = two_quotients();
        // N_0 quotients only towards 2, so the arrow 0 → 1 cannot be
        // extended to any net element.
        let n = Net::new(
            [
                (ObjId(0), vec![MorId(4)]),
                (ObjId(1), vec![MorId(1)]),
                (ObjId(2), vec![MorId(2)]),
            ]
            .into_iter()
            .collect(),
        );
        let report = validate_net(&c, &n);
        assert_eq!(
            report.failures,
            vec![NetIssue::MissingCounterfort { alpha: MorId(3), tau: MorId(1) }]
        );
    }

    #[test]
    fn non_epi_element_is_rejected() {
        let c = split_mono_category();
        let n = Net::new(
            [(ObjId(0), vec![MorId(3)])] // α is a split mono, not epi
                .into_iter()
                .collect(),
        );
        let report = validate_net(&c, &n);
        assert_eq!(
            report.failures,
            vec![NetIssue::ElementNotEpiFromObject { object: ObjId(0), element: MorId(3) }]
        );
    }

    #[test]
    fn step_net_envelopes_match_direct_search() {
        let c = chain();
        let n = step_net();
        let phi = MorphismClassSpec::ExplicitSet(vec![MorId(1), MorId(4), MorId(5)]);
        let out = envelope_via_net(&c, &n, ObjId(0), &MorphismClassSpec::Epi, &phi).unwrap();
        assert!(out.omega_failure.is_none());
        assert_eq!(out.in_omega.as_ref().unwrap().rho, MorId(1));
        assert_eq!(out.in_omega.as_ref().unwrap().e, ObjId(1));
        assert_eq!(out.in_epi.as_ref().unwrap().rho, MorId(1));
        // Among strong epis only the identity extends, so the strong
        // envelope stays at 0.
        assert_eq!(out.in_sepi.as_ref().unwrap().rho, MorId(0));
        assert_eq!(out.in_sepi.as_ref().unwrap().e, ObjId(0));
    }

    #[test]
    fn trivial_net_with_identity_test_class_envelopes_to_the_identity() {
        let c = chain();
        let n = Net::trivial(&c);
        let ids: Vec<MorId> = c.objects().map(|x| c.identity(x)).collect();
        let out = envelope_via_net(
            &c,
            &n,
            ObjId(0),
            &MorphismClassSpec::Epi,
            &MorphismClassSpec::ExplicitSet(ids),
        )
        .unwrap();
        assert_eq!(out.in_omega.unwrap().rho, MorId(0));
    }

    #[test]
    fn net_outside_the_test_class_is_refused() {
        let c = chain();
        let n = step_net();
        let out = envelope_via_net(
            &c,
            &n,
            ObjId(0),
            &MorphismClassSpec::Epi,
            &MorphismClassSpec::ExplicitSet(vec![MorId(2)]),
        );
        assert_eq!(out.unwrap_err(), NetEnvelopeError::NetNotInsideTestClass(MorId(1)));
    }

    #[test]
    fn realizing_class_failure_still_computes_the_nodal_bridges() {
        let c = chain();
        let n = step_net();
        let ids = MorphismClassSpec::ExplicitSet(vec![MorId(0), MorId(3), MorId(5)]);
        let phi = MorphismClassSpec::ExplicitSet(vec![MorId(1), MorId(4), MorId(5)]);
        let out = envelope_via_net(&c, &n, ObjId(0), &ids, &phi).unwrap();
        assert!(out.in_omega.is_none());
        assert_eq!(
            out.omega_failure,
            Some(NetEnvelopeError::LimitOutsideRealizingClass {
                object: ObjId(0),
                limit_morphism: MorId(1),
            })
        );
        assert_eq!(out.in_epi.unwrap().rho, MorId(1));
        assert_eq!(out.in_sepi.unwrap().rho, MorId(0));
    }

    #[test]
    fn mono_net_transport_runs_on_the_opposite_category() {
        let c = chain();
        let n = Net::trivial(&c);
        assert!(validate_mono_net(&c, &n).is_valid());
        let ll = mono_local_limit(&c, &n, ObjId(2)).unwrap();
        assert_eq!(ll.x_n, ObjId(2));
        assert_eq!(ll.limit_morphism, MorId(5));
        assert_eq!(mono_induced_morphism(&c, &n, MorId(1)).unwrap(), MorId(1));
        let out = envelope_via_net(
            &c.opposite(),
            &n,
            ObjId(2),
            &MorphismClassSpec::Epi,
            &MorphismClassSpec::AllMorphisms,
        )
        .unwrap();
        let dual = imprint_via_net(
            &c,
            &n,
            ObjId(2),
            &MorphismClassSpec::Mono,
            &MorphismClassSpec::AllMorphisms,
        )
        .unwrap();
        // Chain morphisms are all bimorphisms, so the epi engine on the
        // opposite category and the imprint transport agree verbatim.
        assert_eq!(out.in_omega, dual.in_omega);
        assert_eq!(dual.in_omega.unwrap().rho, MorId(5));
    }

    #[test]
    fn trivial_net_on_the_chain_is_relatively_split() {
        let c = chain();
        assert_eq!(relative_splitting_violation(&c, &Net::trivial(&c)), None);
        assert_eq!(relative_splitting_violation(&c, &full_net(&c)), None);
    }

    #[test]
    fn retraction_square_defeats_relative_splitting() {
        let c = split_mono_category();
        // δ retracts α but does not intertwine the two quotients: the fill
        // for the only counterfort of (α, 1_Y) is α itself, and δ then
        // yields e = α∘δ ≠ 1_Y.
        let n = Net::new(
            [
                (ObjId(0), vec![MorId(0)]),
                (ObjId(1), vec![MorId(1), MorId(6)]),
                (ObjId(2), vec![MorId(2)]),
            ]
            .into_iter()
            .collect(),
        );
        assert!(validate_net(&c, &n).is_valid());
        assert_eq!(relative_splitting_violation(&c, &n), Some((MorId(3), MorId(1))));
    }
}
