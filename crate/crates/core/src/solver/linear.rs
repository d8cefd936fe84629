//! Sparse Cholesky factorization with a fixed pattern.

use faer::dyn_stack::{MemBuffer, MemStack, StackReq};
use faer::linalg::cholesky::llt::factor::LltRegularization;
use faer::sparse::linalg::cholesky::{
    factorize_symbolic_cholesky, CholeskySymbolicParams, LltRef, SymbolicCholesky, SymmetricOrdering,
};
use faer::sparse::{SparseColMatRef, SymbolicSparseColMatRef};
use faer::{Conj, MatMut, Par, Side};

use crate::error::{Error, Result};

/// Symmetric positive definite factorization of a matrix given by its lower
/// triangle in compressed-column form. The symbolic analysis is done once;
/// `factorize` can then be called any number of times with new values on the
/// same pattern. Everything runs sequentially so results are bit-stable.
pub struct SparseCholesky {
    n: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    symbolic: Option<SymbolicCholesky<usize>>,
    factor: Vec<f64>,
    scratch: MemBuffer,
    factored: bool,
}

impl std::fmt::Debug for SparseCholesky {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SparseCholesky").field("n", &self.n).field("nnz", &self.row_idx.len()).finish()
    }
}

impl SparseCholesky {
    /// Rows inside each column must be sorted and every diagonal present.
    pub fn new(n: usize, col_ptr: Vec<usize>, row_idx: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Ok(SparseCholesky {
                n,
                col_ptr,
                row_idx,
                symbolic: None,
                factor: Vec::new(),
                scratch: MemBuffer::new(StackReq::EMPTY),
                factored: true,
            });
        }
        let pattern = SymbolicSparseColMatRef::new_checked(n, n, &col_ptr, None, &row_idx);
        let symbolic =
            factorize_symbolic_cholesky(pattern, Side::Lower, SymmetricOrdering::Amd, CholeskySymbolicParams::default())
                .map_err(|e| Error::SingularSystem(format!("symbolic analysis failed: {e:?}")))?;
        let req = StackReq::any_of(&[
            symbolic.factorize_numeric_llt_scratch::<f64>(Par::Seq, Default::default()),
            symbolic.solve_in_place_scratch::<f64>(1, Par::Seq),
        ]);
        let factor = vec![0.0; symbolic.len_val()];
        Ok(SparseCholesky {
            n,
            col_ptr,
            row_idx,
            symbolic: Some(symbolic),
            factor,
            scratch: MemBuffer::new(req),
            factored: false,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    /// Numeric factorization. `values` follows the pattern given to `new`.
    pub fn factorize(&mut self, values: &[f64]) -> Result<()> {
        self.factored = false;
        let Some(symbolic) = &self.symbolic else {
            self.factored = true;
            return Ok(());
        };
        assert_eq!(values.len(), self.row_idx.len());
        let pattern = SymbolicSparseColMatRef::new_checked(self.n, self.n, &self.col_ptr, None, &self.row_idx);
        let a = SparseColMatRef::new(pattern, values);
        let stack = MemStack::new(&mut self.scratch);
        symbolic
            .factorize_numeric_llt(
                &mut self.factor,
                a,
                Side::Lower,
                LltRegularization::default(),
                Par::Seq,
                stack,
                Default::default(),
            )
            .map_err(|e| Error::SingularSystem(format!("stiffness is not positive definite ({e:?})")))?;
        self.factored = true;
        Ok(())
    }

    /// Overwrites `rhs` with the solution. Requires a successful `factorize`.
    pub fn solve_in_place(&mut self, rhs: &mut [f64]) {
        assert!(self.factored, "solve before factorization");
        assert_eq!(rhs.len(), self.n);
        let Some(symbolic) = &self.symbolic else { return };
        let llt = LltRef::<'_, usize, f64>::new(symbolic, &self.factor);
        let stack = MemStack::new(&mut self.scratch);
        let rhs = MatMut::from_column_major_slice_mut(rhs, self.n, 1);
        llt.solve_in_place_with_conj(Conj::No, rhs, Par::Seq, stack);
    }
}
