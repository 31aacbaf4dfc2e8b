//! Finite-dimensional rational vector spaces.
//!
//! The abelian reference category: kernels and cokernels exist, every
//! bimorphism is an isomorphism, and the reduced middle morphism of a
//! basic decomposition is always invertible.  Quotients are realized on
//! the non-pivot coordinates of the subspace being killed, so all
//! structural matrices are deterministic.

use thiserror::Error;

use crate::matrix::{RatMatrix, Subspace};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VectObj {
    pub dim: usize,
}

impl VectObj {
    pub fn new(dim: usize) -> VectObj {
        VectObj { dim }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("matrix is {mrows}x{mcols} but the morphism needs {target_dim}x{source_dim}")]
    ShapeMismatch { mrows: usize, mcols: usize, target_dim: usize, source_dim: usize },
    #[error("codomain of the first morphism differs from domain of the second")]
    NotComposable,
    #[error("the composite of the two morphisms is not zero")]
    CompositeNotZero,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinMor {
    pub source: VectObj,
    pub target: VectObj,
    pub matrix: RatMatrix,
}

impl LinMor {
    pub fn new(source: VectObj, target: VectObj, matrix: RatMatrix) -> Result<LinMor, LinError> {
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(LinError::ShapeMismatch {
                mrows: matrix.rows(),
                mcols: matrix.cols(),
                target_dim: target.dim,
                source_dim: source.dim,
            });
        }
        Ok(LinMor { source, target, matrix })
    }

    pub fn identity(x: VectObj) -> LinMor {
        LinMor { source: x, target: x, matrix: RatMatrix::identity(x.dim) }
    }

    pub fn zero(source: VectObj, target: VectObj) -> LinMor {
        LinMor { source, target, matrix: RatMatrix::zeros(target.dim, source.dim) }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim == self.target.dim && self.is_mono()
    }
}

/// `f` then `g`, so the matrix is g·f.
pub fn compose(f: &LinMor, g: &LinMor) -> Result<LinMor, LinError> {
    if f.target != g.source {
        return Err(LinError::NotComposable);
    }
    Ok(LinMor {
        source: f.source,
        target: g.target,
        matrix: g.matrix.mul(&f.matrix),
    })
}

/// Null space with its inclusion into the domain.
pub fn kernel(f: &LinMor) -> (VectObj, LinMor) {
    let inc = f.matrix.null_space_columns();
    let k = VectObj::new(inc.cols());
    (k, LinMor { source: k, target: f.source, matrix: inc })
}

/// Quotient of the codomain by the column space, with its projection.
pub fn cokernel(f: &LinMor) -> (VectObj, LinMor) {
    let image = Subspace::span_columns(f.target.dim, &f.matrix);
    let q = image.quotient_projection();
    let c = VectObj::new(q.rows());
    (c, LinMor { source: f.target, target: c, matrix: q })
}

/// Column space with its inclusion into the codomain; computed as the
/// kernel of the cokernel.
pub fn image(f: &LinMor) -> (VectObj, LinMor) {
    let inc = Subspace::span_columns(f.target.dim, &f.matrix)
        .basis_rows()
        .transpose();
    let i = VectObj::new(inc.cols());
    (i, LinMor { source: i, target: f.target, matrix: inc })
}

/// Domain modulo the kernel, with its projection; the cokernel of the
/// kernel.
pub fn coimage(f: &LinMor) -> (VectObj, LinMor) {
    let ker = Subspace::span_columns(f.source.dim, &f.matrix.null_space_columns());
    let q = ker.quotient_projection();
    let c = VectObj::new(q.rows());
    (c, LinMor { source: f.source, target: c, matrix: q })
}

#[derive(Clone, Debug)]
pub struct BasicParts {
    /// Projection onto the coimage; surjective.
    pub coim: LinMor,
    /// The mediating morphism coimage → image; invertible here.
    pub red: LinMor,
    /// Inclusion of the image; injective.
    pub im: LinMor,
}

/// Factors f as im∘red∘coim and verifies the product reassembles f.
pub fn basic_decomposition(f: &LinMor) -> BasicParts {
    let (coim_obj, coim) = coimage(f);
    let (im_obj, im) = image(f);
    let ker = Subspace::span_columns(f.source.dim, &f.matrix.null_space_columns());
    let section = ker.quotient_section();
    let red_matrix = im
        .matrix
        .solve_exact(&f.matrix.mul(&section))
        .expect("the image inclusion spans every column of f");
    let red = LinMor { source: coim_obj, target: im_obj, matrix: red_matrix };
    assert_eq!(
        im.matrix.mul(&red.matrix).mul(&coim.matrix),
        f.matrix,
        "basic decomposition must reassemble the morphism"
    );
    assert!(red.is_iso(), "the reduced middle morphism is invertible over a field");
    BasicParts { coim, red, im }
}

#[derive(Clone, Debug)]
pub struct NodalParts {
    pub gamma: LinMor,
    pub rho: LinMor,
    pub iota: LinMor,
    /// Number of basic decompositions taken before the middle morphism
    /// became a bimorphism.
    pub steps: usize,
}

/// Repeated basic decomposition of the middle morphism until it is a
/// bimorphism.  Over a field the first middle morphism is already
/// invertible, so the loop body runs exactly once; the loop is kept so
/// the step count is observable.
pub fn nodal_decomposition(f: &LinMor) -> NodalParts {
    let mut parts = basic_decomposition(f);
    let mut gamma = parts.coim.clone();
    let mut iota = parts.im.clone();
    let mut steps = 1;
    while !(parts.red.is_mono() && parts.red.is_epi()) {
        parts = basic_decomposition(&parts.red);
        gamma = compose(&gamma, &parts.coim).expect("the tower stays composable");
        iota = compose(&parts.im, &iota).expect("the tower stays composable");
        steps += 1;
    }
    assert_eq!(
        iota.matrix.mul(&parts.red.matrix).mul(&gamma.matrix),
        f.matrix,
        "nodal decomposition must reassemble the morphism"
    );
    NodalParts { gamma, rho: parts.red, iota, steps }
}

#[derive(Clone, Debug)]
pub struct VectHomology {
    pub h_minus: VectObj,
    pub h_plus: VectObj,
    pub h: LinMor,
}

/// Homology of the two-step complex f: X→Y, g: Y→Z with g∘f = 0.
///
/// The left object is the cokernel of f corestricted to ker g, the right
/// object the kernel of g factored through coker f, and h the unique
/// morphism filling the square between them.  Over a field h is an
/// isomorphism and both objects have dimension dim ker g − rank f; both
/// facts are asserted.
pub fn homology(f: &LinMor, g: &LinMor) -> Result<VectHomology, LinError> {
    if f.target != g.source {
        return Err(LinError::NotComposable);
    }
    if !g.matrix.mul(&f.matrix).is_zero() {
        return Err(LinError::CompositeNotZero);
    }
    let (kobj, k) = kernel(g);
    let corestricted = k
        .matrix
        .solve_exact(&f.matrix)
        .expect("g∘f = 0 puts every column of f inside ker g");
    let f_into_kernel = LinMor { source: f.source, target: kobj, matrix: corestricted };
    let (h_minus, c) = cokernel(&f_into_kernel);

    let (_, q) = cokernel(f);
    let image_f = Subspace::span_columns(f.target.dim, &f.matrix);
    let g_bar_matrix = g.matrix.mul(&image_f.quotient_section());
    assert_eq!(
        g_bar_matrix.mul(&q.matrix),
        g.matrix,
        "g factors through the cokernel of f"
    );
    let g_bar = LinMor { source: q.target, target: g.target, matrix: g_bar_matrix };
    let (h_plus, j) = kernel(&g_bar);

    let into_quotient = q.matrix.mul(&k.matrix);
    let m = j
        .matrix
        .solve_exact(&into_quotient)
        .expect("ker g lands inside ker of the factored g");
    let h_matrix = c
        .matrix
        .transpose()
        .solve_exact(&m.transpose())
        .expect("the comparison morphism factors through the cokernel")
        .transpose();
    let h = LinMor { source: h_minus, target: h_plus, matrix: h_matrix };
    assert_eq!(
        j.matrix.mul(&h.matrix).mul(&c.matrix),
        into_quotient,
        "h must fill the comparison square"
    );
    assert!(h.is_iso(), "homology comparison is invertible over a field");
    let expected = kobj.dim - f.rank();
    assert_eq!(h_minus.dim, expected, "dim H equals dim ker g − rank f");
    assert_eq!(h_plus.dim, expected, "dim H equals dim ker g − rank f");
    Ok(VectHomology { h_minus, h_plus, h })
}

/// Smallest subobject containing the given column vectors, with its
/// inclusion.  The closure operator on subspaces is the identity in
/// finite dimensions, so the iteration stabilizes at the very first
/// stage; that is asserted rather than assumed.
pub fn env_of_set(x: &VectObj, members: &RatMatrix) -> (VectObj, LinMor) {
    assert_eq!(members.rows(), x.dim, "members must be vectors of the ambient space");
    let mut stage = Subspace::span_columns(x.dim, members);
    let mut extra_steps = 0;
    loop {
        let next = Subspace::span_rows(x.dim, stage.basis_rows());
        if next == stage {
            break;
        }
        stage = next;
        extra_steps += 1;
    }
    assert_eq!(extra_steps, 0, "the span is already closed at the first stage");
    let inc = stage.basis_rows().transpose();
    let e = VectObj::new(inc.cols());
    (e, LinMor { source: e, target: *x, matrix: inc })
}
