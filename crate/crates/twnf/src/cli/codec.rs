//! The `tten-json` v1 tensor file format: JSON with explicit dimensions,
//! a domain tag, and slice-major nested arrays of [re, im] pairs. Plain
//! decimal text round-trips double precision losslessly.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{Domain, Tensor3};

pub const FORMAT: &str = "tten-json";
pub const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TensorFile {
    format: String,
    version: u32,
    m: usize,
    n: usize,
    p: usize,
    domain: String,
    /// data[slice][row][col] = [re, im]
    data: Vec<Vec<Vec<[f64; 2]>>>,
}

pub fn write_tensor(path: &Path, t: &Tensor3) -> Result<()> {
    let (m, n, p) = (t.rows(), t.cols(), t.slices());
    let data = (0..p)
        .map(|k| {
            (0..m)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let z = t[(i, j, k)];
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let file = TensorFile {
        format: FORMAT.into(),
        version: VERSION,
        m,
        n,
        p,
        domain: t.domain().to_string(),
        data,
    };
    let writer = BufWriter::new(File::create(path)?);
    serde_json::to_writer(writer, &file)
        .map_err(|e| Error::Codec(format!("{}: write failed: {e}", path.display())))
}

pub fn read_tensor(path: &Path) -> Result<Tensor3> {
    let reader = BufReader::new(File::open(path)?);
    let file: TensorFile = serde_json::from_reader(reader)
        .map_err(|e| Error::Codec(format!("{}: {e}", path.display())))?;

    if file.format != FORMAT {
        return Err(Error::Codec(format!(
            "{}: unknown format marker {:?}",
            path.display(),
            file.format
        )));
    }
    if file.version != VERSION {
        return Err(Error::Codec(format!(
            "{}: unsupported version {} (expected {VERSION})",
            path.display(),
            file.version
        )));
    }
    if file.m < 1 || file.n < 1 || file.p < 1 {
        return Err(Error::Codec(format!(
            "{}: dimensions must be >= 1, got {}x{}x{}",
            path.display(),
            file.m,
            file.n,
            file.p
        )));
    }
    let domain = match file.domain.as_str() {
        "spatial" => Domain::Spatial,
        "fourier" => Domain::Fourier,
        other => {
            return Err(Error::Codec(format!(
                "{}: domain must be \"spatial\" or \"fourier\", got {other:?}",
                path.display()
            )))
        }
    };

    if file.data.len() != file.p {
        return Err(Error::Codec(format!(
            "{}: declared p = {} but data has {} slices",
            path.display(),
            file.p,
            file.data.len()
        )));
    }
    let mut t = Tensor3::zeros(file.m, file.n, file.p, domain);
    for (k, slice) in file.data.iter().enumerate() {
        if slice.len() != file.m {
            return Err(Error::Codec(format!(
                "{}: slice {} has {} rows, expected {}",
                path.display(),
                k + 1,
                slice.len(),
                file.m
            )));
        }
        for (i, row) in slice.iter().enumerate() {
            if row.len() != file.n {
                return Err(Error::Codec(format!(
                    "{}: slice {}, row {} has {} entries, expected {}",
                    path.display(),
                    k + 1,
                    i + 1,
                    row.len(),
                    file.n
                )));
            }
            for (j, &[re, im]) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::Codec(format!(
                        "{}: non-finite value at slice {}, row {}, col {}",
                        path.display(),
                        k + 1,
                        i + 1,
                        j + 1
                    )));
                }
                t[(i, j, k)] = Complex64::new(re, im);
            }
        }
    }
    Ok(t)
}
