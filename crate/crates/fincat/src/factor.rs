//! Factorizations through an epi-mono pair, strong decompositions, and
//! nodal decomposition.
//!
//! A strong decomposition of φ is φ = ι∘ρ∘γ with γ a strong epi and ι a
//! strong mono; it is nodal when the middle ρ is a bimorphism. The nodal
//! decomposition, when present, subordinates every strong decomposition and
//! is unique up to isomorphism; both facts are re-verified on every call
//! rather than trusted.

use thiserror::Error;

use crate::classify::{self, MorphismClassification};
use crate::core::{FinCategory, MorId, MorphismClassSpec, ObjId};
use crate::envelope;
use crate::exec::{self, ExecMode};

/// φ = mono_part ∘ epi_part through `middle`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factorization {
    pub epi_part: MorId,
    pub mono_part: MorId,
    pub middle: ObjId,
}

/// φ = iota ∘ rho ∘ gamma with gamma strong epi and iota strong mono;
/// p and q are the intermediate objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrongDecomposition {
    pub gamma: MorId,
    pub rho: MorId,
    pub iota: MorId,
    pub p: ObjId,
    pub q: ObjId,
}

/// Strong decomposition whose middle morphism is a bimorphism. The three
/// components are the infinite coimage, reduced part, and infinite image;
/// `coim` and `im` are the intermediate objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodalDecomposition {
    pub coim_inf: MorId,
    pub red_inf: MorId,
    pub im_inf: MorId,
    pub coim: ObjId,
    pub im: ObjId,
}

impl NodalDecomposition {
    pub fn as_strong(&self) -> StrongDecomposition {
        StrongDecomposition {
            gamma: self.coim_inf,
            rho: self.red_inf,
            iota: self.im_inf,
            p: self.coim,
            q: self.im,
        }
    }
}

/// Every way to write φ as mono ∘ epi, in lexicographic (epi, mono) order.
/// The trivial splittings through the endpoints appear whenever φ itself
/// is mono or epi.
pub fn factorizations(c: &FinCategory, phi: MorId) -> Vec<Factorization> {
    let mode = ExecMode::Sequential;
    let cls = classify::classify_all_in(c, mode);
    factorizations_with(c, phi, &cls)
}

pub(crate) fn factorizations_with(
    c: &FinCategory,
    phi: MorId,
    cls: &[MorphismClassification],
) -> Vec<Factorization> {
    let mono: Vec<bool> = cls.iter().map(|x| x.mono).collect();
    let epi: Vec<bool> = cls.iter().map(|x| x.epi).collect();
    classify::epi_mono_factorizations_with(c, phi, &mono, &epi)
        .into_iter()
        .map(|(e, mu)| Factorization { epi_part: e, mono_part: mu, middle: c.cod(e) })
        .collect()
}

/// Every strong decomposition of φ, ordered by (gamma, rho, iota).
pub fn strong_decompositions(c: &FinCategory, phi: MorId) -> Vec<StrongDecomposition> {
    let cls = classify::classify_all_in(c, ExecMode::Sequential);
    strong_decompositions_with(c, phi, &cls)
}

pub(crate) fn strong_decompositions_with(
    c: &FinCategory,
    phi: MorId,
    cls: &[MorphismClassification],
) -> Vec<StrongDecomposition> {
    let mut out = Vec::new();
    for gamma in c.morphisms() {
        if c.dom(gamma) != c.dom(phi) || !cls[gamma.0].strong_epi {
            continue;
        }
        for rho in c.morphisms() {
            if c.dom(rho) != c.cod(gamma) {
                continue;
            }
            let Some(rg) = c.comp(gamma, rho) else { continue };
            for iota in c.morphisms() {
                if c.cod(iota) != c.cod(phi)
                    || c.dom(iota) != c.cod(rho)
                    || !cls[iota.0].strong_mono
                {
                    continue;
                }
                if c.comp(rg, iota) == Some(phi) {
                    out.push(StrongDecomposition {
                        gamma,
                        rho,
                        iota,
                        p: c.cod(gamma),
                        q: c.dom(iota),
                    });
                }
            }
        }
    }
    out
}

/// Whether `small` is subordinate to `large`: there are σ: P -> P' with
/// σ∘γ = γ' and τ: Q' -> Q with ι∘τ = ι' and ρ = τ∘ρ'∘σ. σ and τ are
/// unique when they exist (γ is epi, ι is mono).
pub fn subordinates(
    c: &FinCategory,
    small: &StrongDecomposition,
    large: &StrongDecomposition,
) -> bool {
    let sigma = c
        .hom_set(small.p, large.p)
        .into_iter()
        .find(|&s| c.comp(small.gamma, s) == Some(large.gamma));
    let tau = c
        .hom_set(large.q, small.q)
        .into_iter()
        .find(|&t| c.comp(t, small.iota) == Some(large.iota));
    match (sigma, tau) {
        (Some(s), Some(t)) => {
            let through = c.compose(c.compose(s, large.rho), t);
            through == small.rho
        }
        _ => false,
    }
}

fn nodal_key(n: &NodalDecomposition) -> (ObjId, ObjId, MorId, MorId, MorId) {
    (n.coim, n.im, n.coim_inf, n.red_inf, n.im_inf)
}

/// Searches all strong decompositions for one with a bimorphism middle.
/// Returns the lexicographically least candidate by (Coim, Im, γ, ρ, ι)
/// after verifying that it subordinates every strong decomposition and is
/// isomorphic (two-sided subordination) to every other candidate.
pub fn nodal_decomposition(c: &FinCategory, phi: MorId) -> Option<NodalDecomposition> {
    nodal_decomposition_in(c, phi, exec::mode())
}

pub fn nodal_decomposition_in(
    c: &FinCategory,
    phi: MorId,
    mode: ExecMode,
) -> Option<NodalDecomposition> {
    let cls = classify::classify_all_in(c, mode);
    nodal_decomposition_with(c, phi, &cls)
}

/// Whether every morphism of the category has a nodal decomposition.
/// Results that transport a single morphism's decomposition to a whole
/// class of envelopes assume this holds category-wide, not just at the
/// morphism in hand.
pub fn has_nodal_decompositions(c: &FinCategory) -> bool {
    let cls = classify::classify_all_in(c, exec::mode());
    exec::all(exec::mode(), c.morphism_count(), |i| {
        nodal_decomposition_with(c, MorId(i), &cls).is_some()
    })
}

pub(crate) fn nodal_decomposition_with(
    c: &FinCategory,
    phi: MorId,
    cls: &[MorphismClassification],
) -> Option<NodalDecomposition> {
    let all = strong_decompositions_with(c, phi, cls);
    let winner = all
        .iter()
        .filter(|s| cls[s.rho.0].bim)
        .map(|s| NodalDecomposition {
            coim_inf: s.gamma,
            red_inf: s.rho,
            im_inf: s.iota,
            coim: s.p,
            im: s.q,
        })
        .min_by_key(nodal_key)?;
    let canonical = winner.as_strong();
    for s in &all {
        assert!(
            subordinates(c, s, &canonical),
            "internal invariant violated: a bimorphism-middle decomposition fails to \
             subordinate some strong decomposition of {phi:?}"
        );
        if cls[s.rho.0].bim {
            assert!(
                subordinates(c, &canonical, s),
                "internal invariant violated: two non-isomorphic bimorphism-middle \
                 decompositions of {phi:?}"
            );
        }
    }
    Some(winner)
}

/// The minimal and maximal epi-mono factorizations of φ, derived from its
/// nodal decomposition: min = (coim∞, im∞∘red∞), max = (red∞∘coim∞, im∞).
/// Every other factorization sits between them in the subordination order;
/// that is re-verified on each call.
pub fn min_max_factorization(
    c: &FinCategory,
    phi: MorId,
) -> Option<(Factorization, Factorization)> {
    let cls = classify::classify_all_in(c, ExecMode::Sequential);
    let nodal = nodal_decomposition_with(c, phi, &cls)?;
    let min = Factorization {
        epi_part: nodal.coim_inf,
        mono_part: c.compose(nodal.red_inf, nodal.im_inf),
        middle: nodal.coim,
    };
    let max = Factorization {
        epi_part: c.compose(nodal.coim_inf, nodal.red_inf),
        mono_part: nodal.im_inf,
        middle: nodal.im,
    };
    for f in factorizations_with(c, phi, &cls) {
        let below = factorization_mediator(c, &min, &f);
        let above = factorization_mediator(c, &f, &max);
        assert!(
            below.is_some() && above.is_some(),
            "internal invariant violated: factorization {f:?} of {phi:?} escapes the \
             min/max interval"
        );
    }
    Some((min, max))
}

/// Mediator β with ε' = β∘ε and μ = μ'∘β, unique when it exists; it is
/// automatically a bimorphism by the cancellation laws.
pub fn factorization_mediator(
    c: &FinCategory,
    lower: &Factorization,
    upper: &Factorization,
) -> Option<MorId> {
    c.hom_set(lower.middle, upper.middle).into_iter().find(|&b| {
        c.comp(lower.epi_part, b) == Some(upper.epi_part)
            && c.comp(b, upper.mono_part) == Some(lower.mono_part)
    })
}

/// For every morphism that is not mono there is a factorization through a
/// non-isomorphic strong epimorphism.
pub fn strong_epis_discern_monos(c: &FinCategory) -> bool {
    discern(c, true, true)
}

/// Dual: every non-epi extends a non-isomorphic strong monomorphism.
pub fn strong_monos_discern_epis(c: &FinCategory) -> bool {
    discern(c, false, true)
}

pub fn epis_discern_monos(c: &FinCategory) -> bool {
    discern(c, true, false)
}

pub fn monos_discern_epis(c: &FinCategory) -> bool {
    discern(c, false, false)
}

fn discern(c: &FinCategory, mono_side: bool, strong: bool) -> bool {
    let cls = classify::classify_all_in(c, ExecMode::Sequential);
    for phi in c.morphisms() {
        let subject_ok = if mono_side { cls[phi.0].mono } else { cls[phi.0].epi };
        if subject_ok {
            continue;
        }
        let found = c.morphisms().any(|e| {
            let class_ok = if mono_side {
                if strong { cls[e.0].strong_epi } else { cls[e.0].epi }
            } else if strong {
                cls[e.0].strong_mono
            } else {
                cls[e.0].mono
            };
            if !class_ok || cls[e.0].iso {
                return false;
            }
            if mono_side {
                // φ = φ'∘ε with ε a (strong) epi that is not iso.
                c.dom(e) == c.dom(phi)
                    && c
                        .hom_set(c.cod(e), c.cod(phi))
                        .into_iter()
                        .any(|rest| c.comp(e, rest) == Some(phi))
            } else {
                // φ = μ∘φ' with μ a (strong) mono that is not iso.
                c.cod(e) == c.cod(phi)
                    && c
                        .hom_set(c.dom(phi), c.dom(e))
                        .into_iter()
                        .any(|rest| c.comp(rest, e) == Some(phi))
            }
        });
        if !found {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum NodalAssemblyError {
    #[error("strong epimorphisms do not discern monomorphisms in this category")]
    StrongEpisDoNotDiscernMonos,
    #[error("strong monomorphisms do not discern epimorphisms in this category")]
    StrongMonosDoNotDiscernEpis,
    #[error("the domain has no strong-epi envelope with respect to the morphism")]
    MissingEnvelope,
    #[error("the codomain has no strong-mono imprint by means of the morphism")]
    MissingImprint,
}

/// Assembles the nodal decomposition of φ from the strong-epi envelope of
/// its domain and the strong-mono imprint of its codomain: the envelope's
/// continuation α and the imprint's lift β form a square over φ whose
/// diagonal δ is the reduced part. The discerning predicates are what force
/// δ to be a bimorphism, so they are checked first and the first failing
/// precondition is reported. The assembled triple is verified to be
/// isomorphic (two-sided subordinate) to the directly searched one.
pub fn nodal_from_envelope_imprint(
    c: &FinCategory,
    phi: MorId,
) -> Result<NodalDecomposition, NodalAssemblyError> {
    if !strong_epis_discern_monos(c) {
        return Err(NodalAssemblyError::StrongEpisDoNotDiscernMonos);
    }
    if !strong_monos_discern_epis(c) {
        return Err(NodalAssemblyError::StrongMonosDoNotDiscernEpis);
    }
    let x = c.dom(phi);
    let y = c.cod(phi);
    let single = MorphismClassSpec::ExplicitSet(vec![phi]);
    let env = envelope::envelope(c, x, &MorphismClassSpec::SEpi, &single)
        .expect("fixed specs always evaluate")
        .ok_or(NodalAssemblyError::MissingEnvelope)?;
    let imp = envelope::imprint(c, y, &MorphismClassSpec::SMono, &single)
        .expect("fixed specs always evaluate")
        .ok_or(NodalAssemblyError::MissingImprint)?;
    let gamma = env.rho;
    let iota = imp.rho;

    let alpha = single_mediator(c.hom_set(env.e, y), |a| c.comp(gamma, a) == Some(phi));
    let beta = single_mediator(c.hom_set(x, imp.e), |b| c.comp(b, iota) == Some(phi));
    // γ is epi and ι is mono, so the diagonal is determined by either side
    // of the square.
    let delta = single_mediator(c.hom_set(env.e, imp.e), |d| {
        c.comp(gamma, d) == Some(beta) && c.comp(d, iota) == Some(alpha)
    });
    assert!(
        classify::is_mono(c, delta) && classify::is_epi(c, delta),
        "internal invariant violated: the diagonal of the envelope-imprint square is not a bimorphism"
    );

    let assembled = NodalDecomposition {
        coim_inf: gamma,
        red_inf: delta,
        im_inf: iota,
        coim: env.e,
        im: imp.e,
    };
    let direct = nodal_decomposition(c, phi)
        .expect("internal invariant violated: assembly succeeded but the direct search found nothing");
    assert!(
        subordinates(c, &assembled.as_strong(), &direct.as_strong())
            && subordinates(c, &direct.as_strong(), &assembled.as_strong()),
        "internal invariant violated: assembled and searched nodal decompositions are not isomorphic"
    );
    Ok(assembled)
}

fn single_mediator(candidates: Vec<MorId>, pred: impl Fn(MorId) -> bool) -> MorId {
    let mut it = candidates.into_iter().filter(|&m| pred(m));
    let found = it
        .next()
        .expect("internal invariant violated: a universal mediator is missing");
    assert!(
        it.next().is_none(),
        "internal invariant violated: a universal mediator is not unique"
    );
    found
}
