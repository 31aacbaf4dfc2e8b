//! Homology of two-step complexes and the comparison morphism between
//! its two constructions.
//!
//! For f: X→Y, g: Y→Z with g∘f = 0 there are two candidate homology
//! objects: the cokernel of f corestricted to ker g, and the kernel of g
//! factored through coker f.  A unique morphism h connects them, filling
//! j∘h∘c = q∘k where k, j are the kernel inclusions and c, q the cokernel
//! projections.  The pair-category version classifies h but asserts
//! nothing about it beyond the defining square: whether h can fail to be
//! invertible here is exactly what the exhaustive search below probes.
//! (The vector-space version lives next to the other abelian operations
//! and does assert invertibility.)

use crate::matrix::{Q, RatMatrix, Subspace};
use crate::pair::{self, PairError, PairMor, PairObj};

#[derive(Clone, Debug)]
pub struct PairHomology {
    pub h_minus: PairObj,
    pub h_plus: PairObj,
    pub h: PairMor,
}

pub fn homology(f: &PairMor, g: &PairMor) -> Result<PairHomology, PairError> {
    if f.target() != g.source() {
        return Err(PairError::NotComposable);
    }
    if !g.matrix().mul(f.matrix()).is_zero() {
        return Err(PairError::CompositeNotZero);
    }
    let (kobj, k) = pair::kernel(g);
    let corestricted = k
        .matrix()
        .solve_exact(f.matrix())
        .expect("g∘f = 0 puts every column of f inside ker g");
    let f_into_kernel = PairMor::new(f.source().clone(), kobj, corestricted)
        .expect("the corestriction keeps the decoration");
    let (h_minus, c) = pair::cokernel(&f_into_kernel);

    let (coker_obj, q) = pair::cokernel(f);
    let image_f = Subspace::span_columns(f.target().dim(), f.matrix());
    let g_bar_matrix = g.matrix().mul(&image_f.quotient_section());
    assert_eq!(
        g_bar_matrix.mul(q.matrix()),
        *g.matrix(),
        "g factors through the cokernel of f"
    );
    let g_bar = PairMor::new(coker_obj, g.target().clone(), g_bar_matrix)
        .expect("the factored morphism keeps the decoration");
    let (h_plus, j) = pair::kernel(&g_bar);

    let into_quotient = q.matrix().mul(k.matrix());
    let m = j
        .matrix()
        .solve_exact(&into_quotient)
        .expect("ker g lands inside ker of the factored g");
    let h_matrix = c
        .matrix()
        .transpose()
        .solve_exact(&m.transpose())
        .expect("the comparison morphism factors through the cokernel")
        .transpose();
    let h = PairMor::new(h_minus.clone(), h_plus.clone(), h_matrix)
        .expect("the comparison morphism keeps the decoration");
    assert_eq!(
        j.matrix().mul(h.matrix()).mul(c.matrix()),
        into_quotient,
        "h must fill the comparison square"
    );
    Ok(PairHomology { h_minus, h_plus, h })
}

/// All subspaces of Q^dim whose canonical basis entries come from the
/// grid.  Enumerates reduced-echelon patterns directly: choose pivot
/// columns, then fill each entry strictly right of its pivot and outside
/// the other pivot columns.
pub fn subspaces_over_grid(dim: usize, grid: &[Q]) -> Vec<Subspace> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << dim) {
        let pivots: Vec<usize> = (0..dim).filter(|i| mask & (1 << i) != 0).collect();
        let r = pivots.len();
        let free_slots: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..dim)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let mut fills = vec![0usize; free_slots.len()];
        loop {
            let mut basis = RatMatrix::zeros(r, dim);
            for (i, &p) in pivots.iter().enumerate() {
                basis.set(i, p, Q::from_integer(1.into()));
            }
            for (slot, &(i, c)) in free_slots.iter().enumerate() {
                basis.set(i, c, grid[fills[slot]].clone());
            }
            out.push(Subspace::span_rows(dim, &basis));
            let mut carry = true;
            for slot in fills.iter_mut() {
                *slot += 1;
                if *slot < grid.len() {
                    carry = false;
                    break;
                }
                *slot = 0;
            }
            if carry {
                break;
            }
        }
    }
    out
}

/// All rows×cols matrices with entries from the grid, in odometer order.
pub fn matrices_over_grid(rows: usize, cols: usize, grid: &[Q]) -> Vec<RatMatrix> {
    let cells = rows * cols;
    let mut out = Vec::new();
    let mut fills = vec![0usize; cells];
    loop {
        out.push(RatMatrix::new(
            rows,
            cols,
            fills.iter().map(|&i| grid[i].clone()).collect(),
        ));
        let mut carry = true;
        for slot in fills.iter_mut() {
            *slot += 1;
            if *slot < grid.len() {
                carry = false;
                break;
            }
            *slot = 0;
        }
        if carry {
            break;
        }
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct PathologySearch {
    /// Complexes whose homology was actually computed.
    pub examined: usize,
    /// First complex found whose comparison morphism is a bimorphism but
    /// not an isomorphism.
    pub witness: Option<(PairMor, PairMor)>,
}

/// Exhaustive sweep over every pair-category complex with dimensions up
/// to `max_dim` and all matrix and subspace entries drawn from the grid.
/// Every composable pair with zero composite is run through [`homology`]
/// and the comparison morphism classified; the search stops at the first
/// bimorphism-not-iso witness.
pub fn search_h_non_iso(max_dim: usize, grid: &[Q]) -> PathologySearch {
    let mut report = PathologySearch::default();
    for dx in 0..=max_dim {
        for dy in 0..=max_dim {
            for dz in 0..=max_dim {
                let subspaces_x = subspaces_over_grid(dx, grid);
                let subspaces_y = subspaces_over_grid(dy, grid);
                let subspaces_z = subspaces_over_grid(dz, grid);
                for fm in matrices_over_grid(dy, dx, grid) {
                    for gm in matrices_over_grid(dz, dy, grid) {
                        if !gm.mul(&fm).is_zero() {
                            continue;
                        }
                        for sa in &subspaces_x {
                            let fa = sa.map_through(&fm);
                            for sb in &subspaces_y {
                                if !sb.contains(&fa) {
                                    continue;
                                }
                                let gb = sb.map_through(&gm);
                                for sc in &subspaces_z {
                                    if !sc.contains(&gb) {
                                        continue;
                                    }
                                    let f = PairMor::new(
                                        PairObj::from_subspace(sa.clone()),
                                        PairObj::from_subspace(sb.clone()),
                                        fm.clone(),
                                    )
                                    .expect("containment was checked");
                                    let g = PairMor::new(
                                        PairObj::from_subspace(sb.clone()),
                                        PairObj::from_subspace(sc.clone()),
                                        gm.clone(),
                                    )
                                    .expect("containment was checked");
                                    let hom = homology(&f, &g)
                                        .expect("the composite was checked to vanish");
                                    report.examined += 1;
                                    if hom.h.is_bimorphism() && !hom.h.is_iso() {
                                        report.witness = Some((f, g));
                                        return report;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::small_rationals;

    #[test]
    fn pair_homology_of_the_zero_complex_keeps_the_decoration() {
        let middle = PairObj::new(2, &RatMatrix::from_i64(1, 2, &[1, 0])).unwrap();
        let f = PairMor::zero(PairObj::plain(1), middle.clone());
        let g = PairMor::zero(middle, PairObj::plain(1));
        let hom = homology(&f, &g).unwrap();
        assert_eq!(hom.h_minus.dim(), 2);
        assert_eq!(hom.h_minus.subspace().dim(), 1);
        assert_eq!(hom.h_plus, hom.h_minus);
        assert!(hom.h.is_iso());
    }

    #[test]
    fn pair_homology_comparison_fills_its_square_on_a_nontrivial_complex() {
        // (Q,0) --inc--> (Q², span(1,0)) --proj--> (Q, Q), composite 0.
        let x = PairObj::plain(1);
        let y = PairObj::new(2, &RatMatrix::from_i64(1, 2, &[1, 0])).unwrap();
        let z = PairObj::full(1);
        let f = PairMor::new(x, y.clone(), RatMatrix::from_i64(2, 1, &[1, 0])).unwrap();
        let g = PairMor::new(y, z, RatMatrix::from_i64(1, 2, &[0, 1])).unwrap();
        let hom = homology(&f, &g).unwrap();
        assert_eq!(hom.h_minus.dim(), 0);
        assert_eq!(hom.h_plus.dim(), 0);
        assert!(hom.h.is_iso());
    }

    #[test]
    fn grid_enumeration_counts_match_the_closed_forms() {
        let grid = small_rationals(1);
        assert_eq!(grid.len(), 3);
        // Q²: trivial, full, and the lines with canonical slope in the grid.
        assert_eq!(subspaces_over_grid(2, &grid).len(), 6);
        assert_eq!(matrices_over_grid(2, 2, &grid).len(), 81);
        assert_eq!(subspaces_over_grid(0, &grid).len(), 1);
        assert_eq!(matrices_over_grid(0, 2, &grid).len(), 1);
    }

    #[test]
    fn the_small_exhaustive_search_finds_no_pathological_comparison() {
        let report = search_h_non_iso(1, &small_rationals(1));
        assert!(report.witness.is_none());
        assert!(report.examined > 0);
    }
}
