//! The point-scheme side of the correspondence on strong del Pezzo surfaces:
//! ideals of general points in the anticanonical embedding, their degree
//! checks and Betti numbers.

mod hilbert;
mod koszul;
mod points;

pub use hilbert::{gamma, gamma_identities, m_of_r, GammaIdentities, HilbertData};
pub use koszul::{koszul_betti, MAX_KOSZUL_DEGREE, MAX_KOSZUL_RANK};
pub use points::{
    anticanonical_forms, check_mrc_degrees, ideal_graded_piece, product_columns,
    require_strong_del_pezzo, MrcReport, PointScheme,
};
