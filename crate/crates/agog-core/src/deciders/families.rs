//! Closed-form facts and canonical encodings for the benchmark families:
//!
//! * `BS(k,l) = <a,t | t a^k t^-1 = a^l>`, `k, l != 0`;
//! * `G_k = <a,b,s,t | [a,b]=1, s a s^-1 = b, t b t^-1 = a b^k>`;
//! * `G_{k,l} = <a,b,s,t | [a,b]=1, s a s^-1 = b, t b t^-1 = b^k a^l>`,
//!   `(k,l) != (0,0)` (so `G_k = G_{k,1}`);
//! * `H_k`, the quotient of `G_k` by `s^2` (an HNN-extension of the
//!   wreath product `Z wr C_2`).
//!
//! `H_k` has no encoding as a graph of abelian groups (its base group is
//! only virtually abelian), so only its closed form is exposed.

use super::DeciderError;
use crate::fgab::FgAbGroup;
use crate::graph::{EdgeSpec, GraphOfGroups};
use crate::linalg::IntegerMatrix;

/// One member of a benchmark family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Bs { k: i64, l: i64 },
    Gk { k: i64 },
    Gkl { k: i64, l: i64 },
    Hk { k: i64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Bs { .. } => "bs",
            Family::Gk { .. } => "gk",
            Family::Gkl { .. } => "gkl",
            Family::Hk { .. } => "hk",
        }
    }

    pub fn parameters(&self) -> (i64, Option<i64>) {
        match *self {
            Family::Bs { k, l } => (k, Some(l)),
            Family::Gk { k } => (k, None),
            Family::Gkl { k, l } => (k, Some(l)),
            Family::Hk { k } => (k, None),
        }
    }
}

/// Closed-form facts for one family member, plus its canonical encoding
/// as a graph of abelian groups when one exists.
#[derive(Debug, Clone)]
pub struct FamilyFacts {
    pub family: Family,
    pub vrc: bool,
    pub lr: Option<bool>,
    pub virtually_free_by_cyclic: Option<bool>,
    pub encoding: Option<GraphOfGroups>,
}

fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
    IntegerMatrix::from_rows_i64(rows)
}

/// Loop on `Z` with `ω(c) = a^k`, `α(c) = a^l`, i.e. `t a^k t^-1 = a^l`.
pub fn encode_bs(k: i64, l: i64) -> Result<GraphOfGroups, DeciderError> {
    if k == 0 || l == 0 {
        return Err(DeciderError::BadParameter("BS(k,l) needs k, l != 0".into()));
    }
    Ok(GraphOfGroups::build(
        vec![("v".into(), FgAbGroup::free(1))],
        vec![EdgeSpec {
            id: "t".into(),
            from: "v".into(),
            to: "v".into(),
            group: FgAbGroup::free(1),
            alpha: m(&[vec![l]]),
            omega: m(&[vec![k]]),
        }],
    )?)
}

/// One `Z^2` vertex with loops `s` (`s a s^-1 = b`) and `t`
/// (`t b t^-1 = b^k a^l`).
pub fn encode_gkl(k: i64, l: i64) -> Result<GraphOfGroups, DeciderError> {
    if k == 0 && l == 0 {
        return Err(DeciderError::BadParameter("G_{k,l} needs (k,l) != (0,0)".into()));
    }
    Ok(GraphOfGroups::build(
        vec![("v".into(), FgAbGroup::free(2))],
        vec![
            EdgeSpec {
                id: "s".into(),
                from: "v".into(),
                to: "v".into(),
                group: FgAbGroup::free(1),
                alpha: m(&[vec![0], vec![1]]),
                omega: m(&[vec![1], vec![0]]),
            },
            EdgeSpec {
                id: "t".into(),
                from: "v".into(),
                to: "v".into(),
                group: FgAbGroup::free(1),
                alpha: m(&[vec![l], vec![k]]),
                omega: m(&[vec![0], vec![1]]),
            },
        ],
    )?)
}

/// `G_k = G_{k,1}`.
pub fn encode_gk(k: i64) -> Result<GraphOfGroups, DeciderError> {
    encode_gkl(k, 1)
}

/// Recognizes the canonical `G_k` shape (one torsion-free `Z^2` vertex,
/// two loops with `Z` edge groups, one of them the coordinate swap
/// `s a s^-1 = b`, the other `t b t^-1 = a b^k`) and returns `k` together
/// with the ids `(vertex, s-loop, t-loop)`.
pub fn detect_gk(g: &GraphOfGroups) -> Option<(i64, String, String, String)> {
    let graph = g.graph();
    if graph.vertex_count() != 1 || graph.pair_count() != 2 {
        return None;
    }
    if g.vertex_group(0) != &FgAbGroup::free(2) {
        return None;
    }
    let loops: Vec<usize> = vec![0, 2];
    for e in &loops {
        if graph.origin(*e) != 0 || graph.terminus(*e) != 0 {
            return None;
        }
        if g.edge_group(*e) != &FgAbGroup::free(1) {
            return None;
        }
    }
    let col = |hom: &crate::fgab::AbHom| -> Option<(i64, i64)> {
        let mat = hom.matrix();
        let a = i64::try_from(mat.at(0, 0)).ok()?;
        let b = i64::try_from(mat.at(1, 0)).ok()?;
        Some((a, b))
    };
    for (s, t) in [(0usize, 2usize), (2, 0)] {
        let s_alpha = col(g.alpha(s))?;
        let s_omega = col(g.omega(s))?;
        let t_alpha = col(g.alpha(t))?;
        let t_omega = col(g.omega(t))?;
        if s_alpha == (0, 1) && s_omega == (1, 0) && t_omega == (0, 1) {
            if let (1, k) = t_alpha {
                return Some((
                    k,
                    graph.vertex_id(0).to_string(),
                    graph.pair_id_of(s).to_string(),
                    graph.pair_id_of(t).to_string(),
                ));
            }
        }
    }
    None
}

/// Closed-form verdicts per family, with the canonical encoding attached
/// when the member is a graph of abelian groups.
pub fn family_verdicts(f: &Family) -> Result<FamilyFacts, DeciderError> {
    match *f {
        Family::Bs { k, l } => {
            let encoding = encode_bs(k, l)?;
            Ok(FamilyFacts {
                family: *f,
                vrc: k.abs() == l.abs(),
                lr: Some(l == k || l == -k),
                virtually_free_by_cyclic: None,
                encoding: Some(encoding),
            })
        }
        Family::Gk { k } => {
            let encoding = encode_gk(k)?;
            Ok(FamilyFacts {
                family: *f,
                vrc: k.abs() <= 1,
                lr: None,
                virtually_free_by_cyclic: Some(k.abs() <= 2),
                encoding: Some(encoding),
            })
        }
        Family::Gkl { k, l } => {
            let encoding = encode_gkl(k, l)?;
            let vfbc = (k.abs() == 1 && l.abs() == 1) || (k + l).abs() == 1 || (k - l).abs() == 1;
            Ok(FamilyFacts {
                family: *f,
                vrc: k.abs() <= 1 && l.abs() <= 1,
                lr: None,
                virtually_free_by_cyclic: Some(vfbc),
                encoding: Some(encoding),
            })
        }
        Family::Hk { k } => Ok(FamilyFacts {
            family: *f,
            vrc: k.abs() <= 1,
            lr: None,
            virtually_free_by_cyclic: None,
            encoding: None,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let bs = family_verdicts(&Family::Bs { k: 3, l: -3 }).unwrap();
        assert!(bs.vrc);
        assert_eq!(bs.lr, Some(true));

        let bs23 = family_verdicts(&Family::Bs { k: 2, l: 3 }).unwrap();
        assert!(!bs23.vrc);
        assert_eq!(bs23.lr, Some(false));

        let g2 = family_verdicts(&Family::Gk { k: 2 }).unwrap();
        assert!(!g2.vrc);
        assert_eq!(g2.virtually_free_by_cyclic, Some(true));

        let g3 = family_verdicts(&Family::Gk { k: 3 }).unwrap();
        assert_eq!(g3.virtually_free_by_cyclic, Some(false));

        let g11 = family_verdicts(&Family::Gkl { k: 1, l: 1 }).unwrap();
        assert!(g11.vrc);
        assert_eq!(g11.virtually_free_by_cyclic, Some(true));

        let h2 = family_verdicts(&Family::Hk { k: 2 }).unwrap();
        assert!(!h2.vrc);
        assert!(h2.encoding.is_none());
    }

    #[test]
    fn one_and_two_parameter_closed_forms_agree() {
        // G_k = G_{k,1}: both free-by-cyclic closed forms must coincide,
        // and so must the (VRC) forms.
        for k in -8i64..=8 {
            let gk = family_verdicts(&Family::Gk { k }).unwrap();
            let gkl = family_verdicts(&Family::Gkl { k, l: 1 }).unwrap();
            assert_eq!(gk.vrc, gkl.vrc, "k={k}");
            assert_eq!(
                gk.virtually_free_by_cyclic, gkl.virtually_free_by_cyclic,
                "k={k}"
            );
        }
    }

    #[test]
    fn parameter_ranges() {
        assert!(family_verdicts(&Family::Bs { k: 0, l: 1 }).is_err());
        assert!(family_verdicts(&Family::Gkl { k: 0, l: 0 }).is_err());
    }

    #[test]
    fn gk_detection_round_trip() {
        for k in -3..=3 {
            let g = encode_gk(k).unwrap();
            let (found, v, s, t) = detect_gk(&g).expect("canonical encoding detected");
            assert_eq!(found, k);
            assert_eq!((v.as_str(), s.as_str(), t.as_str()), ("v", "s", "t"));
        }
        // G_{k,l} with l != 1 is not the G_k shape.
        let g = encode_gkl(2, -1).unwrap();
        assert!(detect_gk(&g).is_none());
    }
}
