//! Rational spaces with a distinguished subspace.
//!
//! Objects are pairs (V, A ⊆ V); morphisms are linear maps carrying the
//! distinguished subspace of the source into that of the target.  All
//! kernels and cokernels exist, so basic decompositions do too, but the
//! category is not abelian: the reduced middle morphism is bijective on
//! underlying spaces while its inverse need not respect the subspaces, so
//! bimorphisms that are not isomorphisms abound.
//!
//! Mono and epi are decided by the underlying matrix alone.  A non-
//! injective map is defeated from (Q, 0) by a kernel vector versus zero,
//! and a non-surjective map by a functional into (Q, Q) killing the image
//! versus zero; both probes carry any subspace decoration, so injective ⇔
//! mono and surjective ⇔ epi.  The strong classes do see the decoration:
//! a strong epi must map A onto B, a strong mono must pull B back to
//! exactly A.

use thiserror::Error;

use crate::matrix::{RatMatrix, Subspace};
use crate::vect::{LinMor, VectObj};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PairObj {
    dim: usize,
    subspace: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("subspace vectors live in Q^{found}, not the object's Q^{ambient}")]
    SubspaceOutOfAmbient { ambient: usize, found: usize },
    #[error("matrix is {mrows}x{mcols} but the morphism needs {target_dim}x{source_dim}")]
    ShapeMismatch { mrows: usize, mcols: usize, target_dim: usize, source_dim: usize },
    #[error("the matrix does not carry the source subspace into the target subspace")]
    SubspaceNotPreserved,
    #[error("codomain of the first morphism differs from domain of the second")]
    NotComposable,
    #[error("the composite of the two morphisms is not zero")]
    CompositeNotZero,
}

impl PairObj {
    /// The subspace is canonicalized, so equal spans give equal objects.
    pub fn new(dim: usize, subspace_rows: &RatMatrix) -> Result<PairObj, PairError> {
        if subspace_rows.cols() != dim {
            return Err(PairError::SubspaceOutOfAmbient {
                ambient: dim,
                found: subspace_rows.cols(),
            });
        }
        Ok(PairObj { dim, subspace: Subspace::span_rows(dim, subspace_rows) })
    }

    pub fn from_subspace(subspace: Subspace) -> PairObj {
        PairObj { dim: subspace.ambient(), subspace }
    }

    /// (Q^dim, 0).
    pub fn plain(dim: usize) -> PairObj {
        PairObj::from_subspace(Subspace::zero(dim))
    }

    /// (Q^dim, Q^dim).
    pub fn full(dim: usize) -> PairObj {
        PairObj::from_subspace(Subspace::full(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn underlying(&self) -> VectObj {
        VectObj::new(self.dim)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairMor {
    source: PairObj,
    target: PairObj,
    matrix: RatMatrix,
}

impl PairMor {
    pub fn new(source: PairObj, target: PairObj, matrix: RatMatrix) -> Result<PairMor, PairError> {
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(PairError::ShapeMismatch {
                mrows: matrix.rows(),
                mcols: matrix.cols(),
                target_dim: target.dim,
                source_dim: source.dim,
            });
        }
        if !target.subspace.contains(&source.subspace.map_through(&matrix)) {
            return Err(PairError::SubspaceNotPreserved);
        }
        Ok(PairMor { source, target, matrix })
    }

    pub fn identity(x: PairObj) -> PairMor {
        let matrix = RatMatrix::identity(x.dim);
        PairMor { source: x.clone(), target: x, matrix }
    }

    pub fn zero(source: PairObj, target: PairObj) -> PairMor {
        let matrix = RatMatrix::zeros(target.dim, source.dim);
        PairMor { source, target, matrix }
    }

    /// A plain linear morphism between zero-decorated objects.
    pub fn from_lin(f: &LinMor) -> PairMor {
        PairMor {
            source: PairObj::plain(f.source.dim),
            target: PairObj::plain(f.target.dim),
            matrix: f.matrix.clone(),
        }
    }

    pub fn underlying(&self) -> LinMor {
        LinMor::new(self.source.underlying(), self.target.underlying(), self.matrix.clone())
            .expect("pair morphisms are shape-checked at construction")
    }

    pub fn source(&self) -> &PairObj {
        &self.source
    }

    pub fn target(&self) -> &PairObj {
        &self.target
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn is_mono(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }

    pub fn is_epi(&self) -> bool {
        self.matrix.rank() == self.target.dim
    }

    pub fn is_bimorphism(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Epi whose diagonal fill-ins against monos always exist: the matrix
    /// must be surjective and map the source subspace onto the whole
    /// target subspace, otherwise the corestriction to (cod, f(A)) defeats
    /// the fill-in.
    pub fn is_strong_epi(&self) -> bool {
        self.is_epi() && self.source.subspace.map_through(&self.matrix) == self.target.subspace
    }

    /// Mono with fill-ins against epis: injective and the target subspace
    /// pulls back to exactly the source subspace.
    pub fn is_strong_mono(&self) -> bool {
        self.is_mono() && self.target.subspace.preimage_through(&self.matrix) == self.source.subspace
    }

    /// Invertible with a decoration-respecting inverse: bijective and
    /// subspace-onto, which makes the matrix inverse a lawful morphism.
    pub fn is_iso(&self) -> bool {
        self.source.dim == self.target.dim
            && self.is_mono()
            && self.source.subspace.map_through(&self.matrix) == self.target.subspace
    }

    pub fn inverse(&self) -> Option<PairMor> {
        if !self.is_iso() {
            return None;
        }
        let inv = self
            .matrix
            .solve_exact(&RatMatrix::identity(self.target.dim))
            .expect("a bijective matrix is invertible");
        Some(PairMor { source: self.target.clone(), target: self.source.clone(), matrix: inv })
    }
}

/// `f` then `g`.
pub fn compose(f: &PairMor, g: &PairMor) -> Result<PairMor, PairError> {
    if f.target != g.source {
        return Err(PairError::NotComposable);
    }
    Ok(PairMor {
        source: f.source.clone(),
        target: g.target.clone(),
        matrix: g.matrix.mul(&f.matrix),
    })
}

/// (ker f, A ∩ ker f) with its inclusion; the decoration is expressed in
/// kernel coordinates as the preimage of A under the inclusion.
pub fn kernel(f: &PairMor) -> (PairObj, PairMor) {
    let inc = f.matrix.null_space_columns();
    let decoration = f.source.subspace.preimage_through(&inc);
    let k = PairObj::from_subspace(decoration);
    let mor = PairMor { source: k.clone(), target: f.source.clone(), matrix: inc };
    (k, mor)
}

/// (W / im f, q(B)) with its projection.
pub fn cokernel(f: &PairMor) -> (PairObj, PairMor) {
    let image = Subspace::span_columns(f.target.dim, &f.matrix);
    let q = image.quotient_projection();
    let c = PairObj::from_subspace(f.target.subspace.map_through(&q));
    let mor = PairMor { source: f.target.clone(), target: c.clone(), matrix: q };
    (c, mor)
}

/// (im f, B ∩ im f) with its inclusion.
pub fn image(f: &PairMor) -> (PairObj, PairMor) {
    let inc = Subspace::span_columns(f.target.dim, &f.matrix)
        .basis_rows()
        .transpose();
    let decoration = f.target.subspace.preimage_through(&inc);
    let i = PairObj::from_subspace(decoration);
    let mor = PairMor { source: i.clone(), target: f.target.clone(), matrix: inc };
    (i, mor)
}

/// (V / ker f, q(A)) with its projection.
pub fn coimage(f: &PairMor) -> (PairObj, PairMor) {
    let ker = Subspace::span_columns(f.source.dim, &f.matrix.null_space_columns());
    let q = ker.quotient_projection();
    let c = PairObj::from_subspace(f.source.subspace.map_through(&q));
    let mor = PairMor { source: f.source.clone(), target: c.clone(), matrix: q };
    (c, mor)
}

#[derive(Clone, Debug)]
pub struct PairBasicParts {
    /// Projection onto the coimage; always a strong epi here.
    pub coim: PairMor,
    /// Mediator coimage → image; bijective on underlying spaces but not
    /// necessarily an isomorphism of pairs.
    pub red: PairMor,
    /// Inclusion of the image; always a strong mono here.
    pub im: PairMor,
}

pub fn basic_decomposition(f: &PairMor) -> PairBasicParts {
    let (coim_obj, coim) = coimage(f);
    let (im_obj, im) = image(f);
    let ker = Subspace::span_columns(f.source.dim, &f.matrix.null_space_columns());
    let red_matrix = im
        .matrix
        .solve_exact(&f.matrix.mul(&ker.quotient_section()))
        .expect("the image inclusion spans every column of f");
    let red = PairMor::new(coim_obj, im_obj, red_matrix)
        .expect("the mediator carries q(A) into B ∩ im f");
    assert_eq!(
        im.matrix.mul(&red.matrix).mul(&coim.matrix),
        f.matrix,
        "basic decomposition must reassemble the morphism"
    );
    assert!(
        red.is_bimorphism(),
        "the mediator is bijective on underlying spaces"
    );
    assert!(coim.is_strong_epi(), "coimage projections map decorations onto their images");
    assert!(im.is_strong_mono(), "image inclusions pull decorations back losslessly");
    PairBasicParts { coim, red, im }
}

#[derive(Clone, Debug)]
pub struct PairNodalParts {
    pub gamma: PairMor,
    pub rho: PairMor,
    pub iota: PairMor,
    pub steps: usize,
}

/// Repeated basic decomposition of the mediator until it is a
/// bimorphism; here the first mediator already is, so the step count is
/// always 1, which the caller can observe.
pub fn nodal_decomposition(f: &PairMor) -> PairNodalParts {
    let mut parts = basic_decomposition(f);
    let mut gamma = parts.coim.clone();
    let mut iota = parts.im.clone();
    let mut steps = 1;
    while !parts.red.is_bimorphism() {
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
    assert_eq!(
        parts.red.matrix.rank(),
        parts.red.source.dim,
        "the middle morphism is bijective on underlying spaces"
    );
    PairNodalParts { gamma, rho: parts.red, iota, steps }
}
