use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Which corner of the padded matrix receives the original block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Corner {
    #[default]
    TopLeft,
    BottomRight,
}

/// Zero-pads a square matrix up to `target x target`, placing it in the
/// top-left corner. Equal sizes return the matrix unchanged.
pub fn star_embed(a: &CMatrix, target: usize) -> Result<CMatrix> {
    star_embed_at(a, target, Corner::TopLeft)
}

pub fn star_embed_at(a: &CMatrix, target: usize, corner: Corner) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "star embedding needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let dim = a.nrows();
    if target < dim {
        return Err(Error::Dimension(format!(
            "cannot embed a {dim}x{dim} matrix into {target}x{target}"
        )));
    }
    let offset = match corner {
        Corner::TopLeft => 0,
        Corner::BottomRight => target - dim,
    };
    let mut out = CMatrix::from_element(target, target, Complex64::new(0.0, 0.0));
    out.view_mut((offset, offset), (dim, dim)).copy_from(a);
    Ok(out)
}
