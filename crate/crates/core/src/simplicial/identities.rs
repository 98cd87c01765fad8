//! Lattice identities every simplicial algebra over a Mal'tsev signature
//! satisfies, evaluated exhaustively.

use serde::Serialize;

use super::{SimplicialMorphism, TruncatedSimplicialAlgebra};
use crate::algebra::{is_double_extension, DoubleExtensionReport};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSquare {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub report: DoubleExtensionReport,
}

/// Every square `d_i d_j = d_{j-1} d_i` (`i < j`) out of `X_n`, `n >= 2`,
/// tested as a double extension.
pub fn face_squares(x: &TruncatedSimplicialAlgebra) -> Result<Vec<FaceSquare>> {
    let mut out = Vec::new();
    for n in 2..=x.truncation() {
        for j in 1..=n {
            for i in 0..j {
                let report =
                    is_double_extension(x.d(n, j), x.d(n, i), x.d(n - 1, i), x.d(n - 1, j - 1))?;
                out.push(FaceSquare { n, i, j, report });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeetImage {
    /// Level of the source meet.
    pub m: usize,
    pub identity: String,
    pub holds: bool,
}

/// For `3 <= m <= N` and `i < j < k` on `X_m`:
/// `d_k(D_i∧D_j) = D_i∧D_j`, `d_j(D_i∧D_k) = D_i∧D_{k-1}` and
/// `d_i(D_j∧D_k) = D_{j-1}∧D_{k-1}`.
pub fn meet_image_identities(x: &TruncatedSimplicialAlgebra) -> Result<Vec<MeetImage>> {
    let mut out = Vec::new();
    for m in 3..=x.truncation() {
        for k in 2..=m {
            for j in 1..k {
                for i in 0..j {
                    let cases = [
                        (k, (i, j), (i, j), "d{k}(D{i}^D{j}) = D{i}^D{j}"),
                        (j, (i, k), (i, k - 1), "d{j}(D{i}^D{k}) = D{i}^D{k-1}"),
                        (i, (j, k), (j - 1, k - 1), "d{i}(D{j}^D{k}) = D{j-1}^D{k-1}"),
                    ];
                    for (face, (a, b), (c, e), shape) in cases {
                        let lhs = x.face_meet(m, a, b).image(x.d(m, face))?;
                        let rhs = x.face_meet(m - 1, c, e);
                        let identity = shape
                            .replace("{k-1}", &(k - 1).to_string())
                            .replace("{j-1}", &(j.wrapping_sub(1)).to_string())
                            .replace("{i}", &i.to_string())
                            .replace("{j}", &j.to_string())
                            .replace("{k}", &k.to_string());
                        out.push(MeetImage {
                            m,
                            identity,
                            holds: lhs == rhs,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// For a levelwise surjection `f`: `f_n(D_i∧D_j) = D_i∧D_j` on the
/// codomain, for every `2 <= n <= N` and `i < j`.
pub fn surjection_meet_images(f: &SimplicialMorphism) -> Result<Vec<MeetImage>> {
    f.require_levelwise_surjective()?;
    let (x, y) = (f.dom(), f.cod());
    let mut out = Vec::new();
    for n in 2..=x.truncation() {
        for j in 1..=n {
            for i in 0..j {
                let lhs = x.face_meet(n, i, j).image(f.component(n))?;
                out.push(MeetImage {
                    m: n,
                    identity: format!("f{n}(D{i}^D{j}) = D{i}^D{j}"),
                    holds: lhs == y.face_meet(n, i, j),
                });
            }
        }
    }
    Ok(out)
}
