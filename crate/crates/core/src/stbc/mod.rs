//! Linear dispersion designs, the `Z_√M` constellation, codeword encoding,
//! the real code matrix and the non-vanishing singular value analyser.

mod constellation;
mod design;
mod design_file;
mod nvs;

pub use constellation::Constellation;
pub use design::{
    build_code_matrix, encode, make_alamouti, make_vblast, normalization_factor, unvectorize, vectorize, Codeword,
    LinearDesign,
};
pub use design_file::{format_design, load_design, parse_design};
pub use nvs::{nvs_sigma_min, NvsEstimate, NvsMode, DEFAULT_NVS_BOUND};
