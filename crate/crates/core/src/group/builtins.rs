use super::{Element, FiniteGroup, DEFAULT_GROUP_CAP};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Matrix};

fn perm(p: &[u32]) -> Element {
    Element::Perm(p.to_vec())
}

fn cycle(n: u32) -> Element {
    Element::Perm((0..n).map(|i| (i + 1) % n).collect())
}

/// Named fixture groups: `S3`, `S4`, `A4`, `D4`, `Q8` and `Z/n`.
pub fn builtin(name: &str) -> Result<FiniteGroup> {
    let gens = match name {
        "S3" => vec![perm(&[1, 0, 2]), perm(&[1, 2, 0])],
        "S4" => vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])],
        "A4" => vec![perm(&[1, 2, 0, 3]), perm(&[1, 0, 3, 2])],
        // symmetries of a square with vertices 0,1,2,3 in cyclic order
        "D4" => vec![cycle(4), perm(&[0, 3, 2, 1])],
        "Q8" => {
            let i = CycNumber::root_of_unity(4, 1);
            let qi = Matrix::diagonal(&[i.clone(), -&i]);
            let qj = Matrix::from_ints(&[&[0, 1], &[-1, 0]]);
            vec![Element::Matrix(qi), Element::Matrix(qj)]
        }
        other => {
            let n = other
                .strip_prefix("Z/")
                .and_then(|s| s.parse::<u32>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Invalid(format!("unknown builtin group {other:?}")))?;
            vec![cycle(n)]
        }
    };
    FiniteGroup::generate(name, gens, DEFAULT_GROUP_CAP)
}
