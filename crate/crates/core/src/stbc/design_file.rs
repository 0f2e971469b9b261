//! Plain-text design files.
//!
//! ```text
//! # comments run to the end of the line
//! nt T K
//! re,im re,im ...    # 2K matrices of nt·T entries each, row-major
//! ```
//!
//! Tokens are whitespace separated; line breaks carry no meaning.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

use super::LinearDesign;

pub fn parse_design(name: &str, text: &str) -> Result<LinearDesign> {
    let mut tokens = text.lines().flat_map(|line| line.split('#').next().unwrap_or("").split_whitespace());
    let mut header = |what: &str| -> Result<usize> {
        let tok = tokens.next().ok_or_else(|| Error::DesignFile(format!("missing {what}")))?;
        tok.parse().map_err(|_| Error::DesignFile(format!("bad {what} '{tok}'")))
    };
    let nt = header("nt")?;
    let t = header("T")?;
    let k = header("K")?;
    let per = nt * t;
    let mut weights = Vec::with_capacity(2 * k);
    for w in 0..2 * k {
        let mut data = Vec::with_capacity(per);
        for e in 0..per {
            let tok = tokens
                .next()
                .ok_or_else(|| Error::DesignFile(format!("matrix {} ends after {e} of {per} entries", w + 1)))?;
            data.push(parse_entry(tok)?);
        }
        weights.push(ComplexMatrix::from_vec(nt, t, data).map_err(|e| Error::DesignFile(e.to_string()))?);
    }
    if let Some(extra) = tokens.next() {
        return Err(Error::DesignFile(format!("trailing token '{extra}'")));
    }
    LinearDesign::new(name, nt, t, weights)
}

fn parse_entry(tok: &str) -> Result<Complex64> {
    let (re, im) = tok.split_once(',').ok_or_else(|| Error::DesignFile(format!("entry '{tok}' is not re,im")))?;
    let re: f64 = re.parse().map_err(|_| Error::DesignFile(format!("bad real part in '{tok}'")))?;
    let im: f64 = im.parse().map_err(|_| Error::DesignFile(format!("bad imaginary part in '{tok}'")))?;
    Ok(Complex64::new(re, im))
}

pub fn load_design(path: impl AsRef<Path>) -> Result<LinearDesign> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let name = path.file_stem().map_or_else(|| "file".to_owned(), |s| s.to_string_lossy().into_owned());
    parse_design(&name, &text)
}

pub fn format_design(design: &LinearDesign) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}", design.name());
    let _ = writeln!(out, "{} {} {}", design.nt(), design.t(), design.k());
    for w in design.weights() {
        for i in 0..w.rows() {
            let row: Vec<String> = w.row(i).iter().map(|v| format!("{},{}", v.re, v.im)).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stbc::{make_alamouti, make_vblast};

    #[test]
    fn round_trips_builtins() {
        for d in [make_alamouti(), make_vblast(3).unwrap()] {
            let parsed = parse_design(d.name(), &format_design(&d)).unwrap();
            assert_eq!(parsed, d);
        }
    }

    #[test]
    fn parses_hand_written_file() {
        let text = "# V-BLAST, one antenna\n1 1 1\n1,0\n0,1 # imaginary unit\n";
        assert_eq!(parse_design("vblast1", text).unwrap(), make_vblast(1).unwrap());
    }

    #[test]
    fn reports_malformed_files() {
        assert!(parse_design("x", "").is_err());
        assert!(parse_design("x", "1 1 1\n1,0\n").is_err());
        assert!(parse_design("x", "1 1 1\n1,0 0;1").is_err());
        assert!(parse_design("x", "1 1 1\n1,0 0,1 2,2").is_err());
    }
}
