//! Compose-closure of a generated family of pair morphisms into an
//! explicit finite-category table.
//!
//! Morphisms are identified by (source index, target index, matrix), so a
//! generator that happens to equal an identity or another composite is
//! merged rather than duplicated.  Classification on the exported table
//! is relative to the morphisms it contains: a matrix that is injective
//! stays table-mono (cancellation quantifies over fewer probes), but a
//! non-injective matrix can look table-mono when the table lacks the
//! distinguishing pair.  Callers who care should include the probes they
//! need among the generators.

use std::collections::HashMap;

use thiserror::Error;

use fincat::{CategoryError, FinCategory};

use crate::matrix::RatMatrix;
use crate::pair::{self, PairMor, PairObj};
use crate::vect::{LinMor, VectObj};

#[derive(Clone, Debug)]
pub struct ExportedCategory {
    pub category: FinCategory,
    pub objects: Vec<PairObj>,
    /// Indexed by `MorId`: identities first (in object order), then the
    /// surviving generators, then discovered composites.
    pub morphisms: Vec<PairMor>,
}

#[derive(Clone, Debug, Error)]
pub enum ExportError {
    #[error("composition closure exceeded the cap of {cap} morphisms")]
    ClosureExceedsCap { cap: usize },
    #[error("objects in the export list must be pairwise distinct")]
    DuplicateObject,
    #[error("generator {index} has an endpoint outside the export list")]
    EndpointNotListed { index: usize },
    #[error(transparent)]
    Table(#[from] CategoryError),
}

pub fn export_finite_subcategory(
    objects: &[PairObj],
    generators: &[PairMor],
    cap: usize,
) -> Result<ExportedCategory, ExportError> {
    for (i, a) in objects.iter().enumerate() {
        if objects[..i].contains(a) {
            return Err(ExportError::DuplicateObject);
        }
    }
    let object_index = |o: &PairObj| objects.iter().position(|x| x == o);

    let mut morphisms: Vec<PairMor> = Vec::new();
    let mut endpoints: Vec<(usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize, RatMatrix), usize> = HashMap::new();
    let push = |mors: &mut Vec<PairMor>,
                    ends: &mut Vec<(usize, usize)>,
                    index: &mut HashMap<(usize, usize, RatMatrix), usize>,
                    m: PairMor,
                    s: usize,
                    t: usize|
     -> Option<usize> {
        let key = (s, t, m.matrix().clone());
        if let Some(&i) = index.get(&key) {
            return Some(i);
        }
        if mors.len() == cap {
            return None;
        }
        let i = mors.len();
        index.insert(key, i);
        mors.push(m);
        ends.push((s, t));
        Some(i)
    };

    for (i, o) in objects.iter().enumerate() {
        push(
            &mut morphisms,
            &mut endpoints,
            &mut index,
            PairMor::identity(o.clone()),
            i,
            i,
        )
        .ok_or(ExportError::ClosureExceedsCap { cap })?;
    }
    for (gi, g) in generators.iter().enumerate() {
        let s = object_index(g.source()).ok_or(ExportError::EndpointNotListed { index: gi })?;
        let t = object_index(g.target()).ok_or(ExportError::EndpointNotListed { index: gi })?;
        push(&mut morphisms, &mut endpoints, &mut index, g.clone(), s, t)
            .ok_or(ExportError::ClosureExceedsCap { cap })?;
    }

    // Worklist closure: every ordered composable pair, including pairs
    // among freshly discovered composites.
    let mut composites: HashMap<(usize, usize), usize> = HashMap::new();
    let mut f = 0;
    while f < morphisms.len() {
        let mut g = 0;
        while g < morphisms.len() {
            if endpoints[f].1 == endpoints[g].0 && !composites.contains_key(&(f, g)) {
                let composed = pair::compose(&morphisms[f], &morphisms[g])
                    .expect("endpoints were matched by index");
                let (fs, gt) = (endpoints[f].0, endpoints[g].1);
                let idx = push(&mut morphisms, &mut endpoints, &mut index, composed, fs, gt)
                    .ok_or(ExportError::ClosureExceedsCap { cap })?;
                composites.insert((f, g), idx);
            }
            g += 1;
        }
        f += 1;
    }

    let dom: Vec<usize> = endpoints.iter().map(|&(s, _)| s).collect();
    let cod: Vec<usize> = endpoints.iter().map(|&(_, t)| t).collect();
    let identity: Vec<usize> = (0..objects.len()).collect();
    let category = FinCategory::from_tables(objects.len(), dom, cod, identity, |f, g| {
        composites[&(f, g)]
    })?;
    Ok(ExportedCategory { category, objects: objects.to_vec(), morphisms })
}

/// Convenience wrapper for plain vector spaces: exports the zero-
/// decorated pairs.
pub fn export_vect_subcategory(
    objects: &[VectObj],
    generators: &[LinMor],
    cap: usize,
) -> Result<ExportedCategory, ExportError> {
    let objs: Vec<PairObj> = objects.iter().map(|o| PairObj::plain(o.dim)).collect();
    let gens: Vec<PairMor> = generators.iter().map(PairMor::from_lin).collect();
    export_finite_subcategory(&objs, &gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fincat::{classify_all, MorId};

    use crate::vect::{basic_decomposition, LinMor, VectObj};

    #[test]
    fn a_two_endomorphism_monoid_exports_as_a_one_object_table() {
        let q = VectObj::new(1);
        let zero = LinMor::zero(q, q);
        let ex = export_vect_subcategory(&[q], &[zero], 8).unwrap();
        assert_eq!(ex.category.object_count(), 1);
        assert_eq!(ex.category.morphism_count(), 2);
        assert!(ex.morphisms[0].matrix() == &RatMatrix::identity(1));
    }

    #[test]
    fn the_projector_closure_reproduces_its_nodal_triple_in_the_table() {
        let q = VectObj::new(1);
        let q2 = VectObj::new(2);
        let f = LinMor::new(q2, q2, RatMatrix::from_i64(2, 2, &[1, 0, 0, 0])).unwrap();
        let parts = basic_decomposition(&f);
        let ex = export_vect_subcategory(
            &[q, q2],
            &[f.clone(), parts.coim.clone(), parts.red.clone(), parts.im.clone()],
            32,
        )
        .unwrap();
        // id_Q, id_Q², f, coim, im; red coincides with id_Q.
        assert_eq!(ex.category.morphism_count(), 5);
        let fid = ex
            .morphisms
            .iter()
            .position(|m| m.matrix() == &f.matrix)
            .unwrap();
        let nodal = fincat::factor::nodal_decomposition(&ex.category, MorId(fid)).unwrap();
        assert_eq!(ex.morphisms[nodal.coim_inf.0].matrix(), &parts.coim.matrix);
        assert_eq!(ex.morphisms[nodal.red_inf.0].matrix(), &parts.red.matrix);
        assert_eq!(ex.morphisms[nodal.im_inf.0].matrix(), &parts.im.matrix);
    }

    #[test]
    fn the_pair_bimorphism_shows_up_as_a_table_bimorphism() {
        let a = PairObj::plain(1);
        let b = PairObj::full(1);
        let j = PairMor::new(a.clone(), b.clone(), RatMatrix::identity(1)).unwrap();
        let ex = export_finite_subcategory(&[a, b], &[j], 8).unwrap();
        assert_eq!(ex.category.morphism_count(), 3);
        let classes = classify_all(&ex.category);
        let jc = &classes[2];
        assert!(jc.mono && jc.epi && !jc.iso);
    }

    #[test]
    fn closure_overflow_and_bad_endpoints_are_reported() {
        let q = VectObj::new(1);
        let two = LinMor::new(q, q, RatMatrix::from_i64(1, 1, &[2])).unwrap();
        let err = export_vect_subcategory(&[q], &[two], 4).unwrap_err();
        assert!(matches!(err, ExportError::ClosureExceedsCap { cap: 4 }));
        let stray = PairMor::identity(PairObj::plain(3));
        let err =
            export_finite_subcategory(&[PairObj::plain(1)], &[stray], 4).unwrap_err();
        assert!(matches!(err, ExportError::EndpointNotListed { index: 0 }));
    }
}
