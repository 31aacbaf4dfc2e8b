//! Law sweep over a dense grid of small pair morphisms: classification
//! probes, strength of the basic decomposition parts, discernment of
//! non-monos by strong epis, single-step nodal decomposition, and the
//! absence of a non-invertible homology comparison.

use prelin::pair::{self, PairMor, PairObj};
use prelin::{
    search_h_non_iso, small_rationals, subspaces_over_grid, matrices_over_grid, q_int, RatMatrix,
};

/// Every valid pair morphism on Q² whose matrix and decorations have
/// entries in {-1, 0, 1}.
fn grid_pair_morphisms() -> Vec<PairMor> {
    let grid = small_rationals(1);
    let subspaces = subspaces_over_grid(2, &grid);
    let mut out = Vec::new();
    for m in matrices_over_grid(2, 2, &grid) {
        for a in &subspaces {
            for b in &subspaces {
                if let Ok(f) = PairMor::new(
                    PairObj::from_subspace(a.clone()),
                    PairObj::from_subspace(b.clone()),
                    m.clone(),
                ) {
                    out.push(f);
                }
            }
        }
    }
    out
}

#[test]
fn cancellation_witnesses_and_corner_isos_match_the_rank_tests() {
    for f in grid_pair_morphisms() {
        let (_, coim_proj) = pair::coimage(&f);
        let (_, im_inc) = pair::image(&f);
        assert_eq!(f.is_mono(), coim_proj.is_iso());
        assert_eq!(f.is_epi(), im_inc.is_iso());

        if !f.is_mono() {
            // A kernel vector against zero defeats left cancellation from
            // the undecorated line.
            let probe_src = PairObj::plain(1);
            let v = f.matrix().null_space_columns().column(0);
            let g1 = PairMor::new(probe_src.clone(), f.source().clone(), v).unwrap();
            let g2 = PairMor::zero(probe_src, f.source().clone());
            assert_ne!(g1, g2);
            assert_eq!(
                pair::compose(&g1, &f).unwrap().matrix(),
                pair::compose(&g2, &f).unwrap().matrix()
            );
        }
        if !f.is_epi() {
            // A functional killing the image defeats right cancellation
            // into the fully decorated line.
            let probe_tgt = PairObj::full(1);
            let (_, q) = pair::cokernel(&f);
            let mut lambda = RatMatrix::zeros(1, f.target().dim());
            for j in 0..f.target().dim() {
                lambda.set(0, j, q.matrix().get(0, j).clone());
            }
            let l1 = PairMor::new(f.target().clone(), probe_tgt.clone(), lambda).unwrap();
            let l2 = PairMor::zero(f.target().clone(), probe_tgt);
            assert_ne!(l1, l2);
            assert_eq!(
                pair::compose(&f, &l1).unwrap().matrix(),
                pair::compose(&f, &l2).unwrap().matrix()
            );
        }
    }
}

#[test]
fn basic_parts_are_strong_and_nodal_needs_one_step() {
    for f in grid_pair_morphisms() {
        let parts = pair::basic_decomposition(&f);
        assert!(parts.coim.is_strong_epi());
        assert!(parts.im.is_strong_mono());
        assert!(parts.red.is_bimorphism());
        let nodal = pair::nodal_decomposition(&f);
        assert_eq!(nodal.steps, 1);
        assert_eq!(
            nodal.rho.matrix().rank(),
            nodal.rho.source().dim(),
            "the middle morphism is bijective on underlying spaces"
        );
    }
}

#[test]
fn strong_epis_discern_non_monos_and_strong_monos_discern_non_epis() {
    let mut saw_non_mono = false;
    let mut saw_non_epi = false;
    for f in grid_pair_morphisms() {
        let parts = pair::basic_decomposition(&f);
        if !f.is_mono() {
            saw_non_mono = true;
            // f routes through its coimage projection: a strong epi that
            // cannot be invertible once the kernel is nonzero.
            assert!(parts.coim.is_strong_epi() && !parts.coim.is_iso());
            let rest = pair::compose(&parts.red, &parts.im).unwrap();
            let via = pair::compose(&parts.coim, &rest).unwrap();
            assert_eq!(via.matrix(), f.matrix());
        }
        if !f.is_epi() {
            saw_non_epi = true;
            assert!(parts.im.is_strong_mono() && !parts.im.is_iso());
        }
    }
    assert!(saw_non_mono && saw_non_epi, "the grid must exercise both branches");
}

#[test]
fn the_exhaustive_small_search_finds_no_non_invertible_comparison() {
    // Entries in {0, 1} keep the complex sweep quick; the wider grid runs
    // in the acceptance suite.
    let grid = vec![q_int(0), q_int(1)];
    let report = search_h_non_iso(2, &grid);
    assert!(report.witness.is_none());
    assert!(report.examined > 100, "the sweep must actually visit complexes");
}
