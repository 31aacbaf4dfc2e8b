//! Finite limits and colimits by exhaustive cone search.
//!
//! A limit is found as the terminal object of the category of cones, with
//! every mediating morphism materialized so callers can verify uniqueness
//! claims directly. Colimits are limits in the opposite category.

use std::collections::BTreeMap;

use crate::core::{Diagram, FinCategory, MorId, ObjId};
use crate::exec::{self, ExecMode};

/// Commuting cone over a diagram. For limit cones `legs[i]: apex -> D(i)`,
/// for colimit cones `legs[i]: D(i) -> apex`; in both cases the legs
/// commute with every edge of the diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    pub apex: ObjId,
    pub legs: Vec<MorId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeDirection {
    Limit,
    Colimit,
}

/// A terminal (for limits) or initial (for colimits) cone together with
/// the unique mediator from (to) every other cone over the same diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitResult {
    pub cone: Cone,
    pub mediators: BTreeMap<Cone, MorId>,
}

fn leg_commutes(
    c: &FinCategory,
    d: &Diagram,
    dir: ConeDirection,
    legs: &[MorId],
    candidate: MorId,
    edge: MorId,
) -> bool {
    let i = d.shape.dom(edge).0;
    let j = d.shape.cod(edge).0;
    let assigned = |k: usize| if k == legs.len() { candidate } else { legs[k] };
    match dir {
        ConeDirection::Limit => c.comp(assigned(i), d.mor(edge)) == Some(assigned(j)),
        ConeDirection::Colimit => c.comp(d.mor(edge), assigned(j)) == Some(assigned(i)),
    }
}

fn extend_cone(
    c: &FinCategory,
    d: &Diagram,
    dir: ConeDirection,
    hom: &[Vec<MorId>],
    apex: ObjId,
    legs: &mut Vec<MorId>,
    out: &mut Vec<Cone>,
) {
    let k = d.shape.object_count();
    if legs.len() == k {
        out.push(Cone { apex, legs: legs.clone() });
        return;
    }
    let i = legs.len();
    let n = c.object_count();
    let target = d.ob(ObjId(i));
    let candidates = match dir {
        ConeDirection::Limit => &hom[apex.0 * n + target.0],
        ConeDirection::Colimit => &hom[target.0 * n + apex.0],
    };
    'next: for &leg in candidates {
        // Check every shape edge whose endpoints are all assigned once this
        // leg is added; edges among earlier legs were checked before.
        for e in d.shape.morphisms() {
            let (a, b) = (d.shape.dom(e).0, d.shape.cod(e).0);
            if a.max(b) != i || a.min(b) > i {
                continue;
            }
            if !leg_commutes(c, d, dir, legs, leg, e) {
                continue 'next;
            }
        }
        legs.push(leg);
        extend_cone(c, d, dir, hom, apex, legs, out);
        legs.pop();
    }
}

/// All commuting cones, apexes ascending and legs in lexicographic order.
pub fn cones(c: &FinCategory, d: &Diagram, dir: ConeDirection) -> Vec<Cone> {
    let hom = c.hom_table();
    let mut out = Vec::new();
    for apex in c.objects() {
        let mut legs = Vec::with_capacity(d.shape.object_count());
        extend_cone(c, d, dir, &hom, apex, &mut legs, &mut out);
    }
    out
}

/// Mediators from `k` into the limit cone `l`.
fn mediators_into(c: &FinCategory, l: &Cone, k: &Cone) -> Vec<MorId> {
    c.hom_set(k.apex, l.apex)
        .into_iter()
        .filter(|&u| l.legs.iter().zip(&k.legs).all(|(&ll, &kl)| c.comp(u, ll) == Some(kl)))
        .collect()
}

/// Terminal cone over the diagram, if any, using the process-wide mode.
pub fn limit(c: &FinCategory, d: &Diagram) -> Option<LimitResult> {
    limit_in(c, d, exec::mode())
}

pub fn limit_in(c: &FinCategory, d: &Diagram, mode: ExecMode) -> Option<LimitResult> {
    let all = cones(c, d, ConeDirection::Limit);
    let is_terminal = |i: usize| all.iter().all(|k| mediators_into(c, &all[i], k).len() == 1);
    let winner = exec::find_lowest(mode, all.len(), is_terminal)?;
    let cone = all[winner].clone();
    let mediators = all
        .iter()
        .map(|k| (k.clone(), mediators_into(c, &cone, k)[0]))
        .collect();
    Some(LimitResult { cone, mediators })
}

/// Initial cocone, computed as a limit in the opposite category. The ids in
/// the result are valid in `c`; legs run `D(i) -> apex`, and each mediator
/// runs from the colimit apex to the other cocone's apex.
pub fn colimit(c: &FinCategory, d: &Diagram) -> Option<LimitResult> {
    colimit_in(c, d, exec::mode())
}

pub fn colimit_in(c: &FinCategory, d: &Diagram, mode: ExecMode) -> Option<LimitResult> {
    let od = Diagram {
        shape: d.shape.opposite(),
        object_assignment: d.object_assignment.clone(),
        morphism_assignment: d.morphism_assignment.clone(),
    };
    limit_in(&c.opposite(), &od, mode)
}

/// Product of the listed objects (repetitions allowed): the limit of a
/// discrete diagram.
pub fn product(c: &FinCategory, objects: &[ObjId]) -> Option<LimitResult> {
    let shape = FinCategory::discrete(objects.len());
    let d = Diagram {
        shape,
        object_assignment: objects.to_vec(),
        morphism_assignment: objects.iter().map(|&x| c.identity(x)).collect(),
    };
    limit(c, &d)
}

/// Walking parallel pair: two objects, two arrows between them.
fn parallel_pair_shape() -> FinCategory {
    FinCategory::from_tables(2, vec![0, 1, 0, 0], vec![0, 1, 1, 1], vec![0, 1], |f, g| {
        match (f, g) {
            (0, x) => x,
            (x, 1) => x,
            _ => unreachable!(),
        }
    })
    .expect("parallel pair shape is lawful")
}

/// Equalizer of two parallel morphisms; the equalizing arrow is `legs[0]`.
pub fn equalizer(c: &FinCategory, f: MorId, g: MorId) -> Option<LimitResult> {
    assert!(
        c.dom(f) == c.dom(g) && c.cod(f) == c.cod(g),
        "equalizer needs parallel morphisms"
    );
    let d = Diagram {
        shape: parallel_pair_shape(),
        object_assignment: vec![c.dom(f), c.cod(f)],
        morphism_assignment: vec![c.identity(c.dom(f)), c.identity(c.cod(f)), f, g],
    };
    limit(c, &d)
}

/// Whether the shape is a partially ordered class in which every pair of
/// objects has a lower bound. The mono-preservation facts for limit legs
/// are conditional on this, so it is checked rather than assumed.
pub fn shape_is_decreasingly_directed_poset(shape: &FinCategory) -> bool {
    if shape.object_count() == 0 || !shape.is_partially_ordered_class() {
        return false;
    }
    shape.objects().all(|a| {
        shape.objects().all(|b| {
            shape
                .objects()
                .any(|w| !shape.hom_set(w, a).is_empty() && !shape.hom_set(w, b).is_empty())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::FinCategory;

    fn empty_diagram() -> Diagram {
        Diagram {
            shape: FinCategory::discrete(0),
            object_assignment: vec![],
            morphism_assignment: vec![],
        }
    }

    #[test]
    fn empty_diagram_cones_and_terminal_object() {
        let c = FinCategory::chain_poset(3);
        let d = empty_diagram();
        assert_eq!(cones(&c, &d, ConeDirection::Limit).len(), 3);
        let lim = limit(&c, &d).unwrap();
        assert_eq!(lim.cone.apex, ObjId(2));
        // Initial object dually.
        let colim = colimit(&c, &d).unwrap();
        assert_eq!(colim.cone.apex, ObjId(0));
    }

    #[test]
    fn product_in_chain_is_meet() {
        let c = FinCategory::chain_poset(3);
        let d = Diagram {
            shape: FinCategory::discrete(2),
            object_assignment: vec![ObjId(1), ObjId(2)],
            morphism_assignment: vec![c.identity(ObjId(1)), c.identity(ObjId(2))],
        };
        let cs = cones(&c, &d, ConeDirection::Limit);
        assert_eq!(
            cs,
            vec![
                Cone { apex: ObjId(0), legs: vec![MorId(1), MorId(2)] },
                Cone { apex: ObjId(1), legs: vec![MorId(3), MorId(4)] },
            ]
        );
        let lim = product(&c, &[ObjId(1), ObjId(2)]).unwrap();
        assert_eq!(lim.cone.apex, ObjId(1));
        assert_eq!(lim.mediators[&cs[0]], MorId(1));
        // Coproduct is the join.
        let colim = colimit(&c, &d).unwrap();
        assert_eq!(colim.cone.apex, ObjId(2));
    }

    #[test]
    fn product_of_single_object_is_identity_leg() {
        let c = FinCategory::chain_poset(2);
        let lim = product(&c, &[ObjId(1)]).unwrap();
        assert_eq!(lim.cone.apex, ObjId(1));
        assert_eq!(lim.cone.legs, vec![c.identity(ObjId(1))]);
    }

    #[test]
    fn product_in_discrete_category_absent() {
        let c = FinCategory::discrete(2);
        assert!(product(&c, &[ObjId(0), ObjId(1)]).is_none());
    }

    fn parallel_pair_cat() -> FinCategory {
        FinCategory::from_tables(2, vec![0, 1, 0, 0], vec![0, 1, 1, 1], vec![0, 1], |f, g| {
            match (f, g) {
                (0, x) => x,
                (x, 1) => x,
                _ => unreachable!(),
            }
        })
        .unwrap()
    }

    #[test]
    fn equalizer_of_distinct_parallel_arrows_can_be_empty() {
        let c = parallel_pair_cat();
        assert_eq!(cones(&c, &equalizer_diagram(&c, MorId(2), MorId(3)), ConeDirection::Limit), vec![]);
        assert!(equalizer(&c, MorId(2), MorId(3)).is_none());
    }

    fn equalizer_diagram(c: &FinCategory, f: MorId, g: MorId) -> Diagram {
        Diagram {
            shape: parallel_pair_shape(),
            object_assignment: vec![c.dom(f), c.cod(f)],
            morphism_assignment: vec![c.identity(c.dom(f)), c.identity(c.cod(f)), f, g],
        }
    }

    #[test]
    fn equalizer_of_equal_arrows_is_domain() {
        let c = parallel_pair_cat();
        let lim = equalizer(&c, MorId(2), MorId(2)).unwrap();
        assert_eq!(lim.cone.apex, ObjId(0));
        assert_eq!(lim.cone.legs[0], c.identity(ObjId(0)));
    }

    #[test]
    fn colimit_agrees_with_limit_in_opposite() {
        let c = FinCategory::chain_poset(4);
        let d = Diagram {
            shape: FinCategory::discrete(2),
            object_assignment: vec![ObjId(1), ObjId(3)],
            morphism_assignment: vec![c.identity(ObjId(1)), c.identity(ObjId(3))],
        };
        let forward = cones(&c, &d, ConeDirection::Colimit);
        let od = Diagram {
            shape: d.shape.opposite(),
            object_assignment: d.object_assignment.clone(),
            morphism_assignment: d.morphism_assignment.clone(),
        };
        let dual = cones(&c.opposite(), &od, ConeDirection::Limit);
        assert_eq!(forward, dual);
    }

    #[test]
    fn limit_apexes_unique_up_to_iso() {
        // Two isomorphic terminal-ish objects: limits still pick one, and
        // the mediators between the two candidate cones are mutually
        // inverse. Category: X ≅ Y, plus an object Z mapping into both.
        let c = FinCategory::from_tables(
            3,
            vec![0, 1, 2, 0, 1, 2, 2],
            vec![0, 1, 2, 1, 0, 0, 1],
            vec![0, 1, 2],
            |f, g| match (f, g) {
                (0, x) => x,
                (1, x) => x,
                (2, x) => x,
                (3, 4) => 0,
                (4, 3) => 1,
                (3, 1) => 3,
                (4, 0) => 4,
                (5, 0) => 5,
                (5, 3) => 6,
                (6, 1) => 6,
                (6, 4) => 5,
                _ => unreachable!("({f}, {g})"),
            },
        )
        .unwrap();
        let d = empty_diagram();
        let lim = limit(&c, &d).unwrap();
        // Apex 0 and apex 1 are both terminal; lowest index wins.
        assert_eq!(lim.cone.apex, ObjId(0));
        let other = Cone { apex: ObjId(1), legs: vec![] };
        let u = lim.mediators[&other];
        let v = c.hom_set(ObjId(0), ObjId(1))[0];
        assert_eq!(c.comp(u, v), Some(c.identity(ObjId(1))));
        assert_eq!(c.comp(v, u), Some(c.identity(ObjId(0))));
    }

    #[test]
    fn directedness_check() {
        assert!(shape_is_decreasingly_directed_poset(&FinCategory::chain_poset(3)));
        assert!(!shape_is_decreasingly_directed_poset(&FinCategory::discrete(2)));
        assert!(!shape_is_decreasingly_directed_poset(&FinCategory::discrete(0)));
        // Meet-semilattice shape: {a, b} above a common bottom.
        let vee = FinCategory::poset(3, |a, b| a == b || a == 0).unwrap();
        assert!(shape_is_decreasingly_directed_poset(&vee));
        // 0 <= 2 and 1 <= 2: the pair (0, 1) has no lower bound.
        let wedge = FinCategory::poset(3, |a, b| a == b || b == 2).unwrap();
        assert!(!shape_is_decreasingly_directed_poset(&wedge));
    }

    #[test]
    fn mono_legs_over_directed_shapes() {
        // Diagram 1 -> 2 inside the chain 0 -> 1 -> 2; edges are mono, the
        // shape is directed, so the limit legs must be mono.
        let c = FinCategory::chain_poset(3);
        let shape = FinCategory::chain_poset(2);
        let d = Diagram {
            shape: shape.clone(),
            object_assignment: vec![ObjId(1), ObjId(2)],
            morphism_assignment: vec![MorId(3), MorId(4), MorId(5)],
        };
        assert!(d.validate(&c).is_ok());
        assert!(shape_is_decreasingly_directed_poset(&shape));
        let lim = limit(&c, &d).unwrap();
        assert_eq!(lim.cone.apex, ObjId(1));
        for &leg in &lim.cone.legs {
            assert!(crate::classify::is_mono(&c, leg));
        }
    }
}
