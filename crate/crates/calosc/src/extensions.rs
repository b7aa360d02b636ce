//! Catalog of the named self-adjoint realizations, their discrete boundary
//! rows, and the lookup table mapping each factorization to the realization
//! it generates.

use crate::asymptotics::{AsymptoticBasis, DomainClass};
use crate::discretization::Grid;
use crate::error::{Error, Result};
use crate::superpotentials::{CaseLabel, CouplingParams};
use serde::Serialize;

/// The one-parameter freedom at the singular endpoint: ratio of the
/// subdominant to the dominant coefficient, with an explicit marker for the
/// pure-subdominant member (the lambda = infinity end of the family).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Mixing {
    Lambda(f64),
    SubdominantOnly,
}

impl std::fmt::Display for Mixing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mixing::Lambda(l) => write!(f, "{l}"),
            Mixing::SubdominantOnly => write!(f, "SubdominantOnly"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ExtensionId {
    /// The unique realization for kappa >= 1.
    H1,
    /// One-parameter family for 0 < kappa < 1. The table only ever produces
    /// lambda >= 0; negative lambda is legal boundary data (it buys exactly
    /// one negative level) but is nobody's factorization.
    H2(Mixing),
    /// The kappa = 0 member with pure sqrt(x) behavior, no log admixture.
    H3Infinity,
    FreeWholeAxis,
    FreeSemiaxisN(u8),
    FreeSemiaxisA(u8),
    IntervalDirichlet,
}

impl ExtensionId {
    pub fn deficiency_index(&self) -> u32 {
        match self {
            ExtensionId::H1 | ExtensionId::FreeWholeAxis | ExtensionId::IntervalDirichlet => 0,
            ExtensionId::H2(_)
            | ExtensionId::H3Infinity
            | ExtensionId::FreeSemiaxisN(_)
            | ExtensionId::FreeSemiaxisA(_) => 1,
        }
    }

    /// What a near-origin fit of an eigenvector should report for this
    /// realization; None when the question does not arise (no singular
    /// endpoint to classify).
    pub fn expected_membership(&self) -> Option<DomainClass> {
        match self {
            ExtensionId::H1 => Some(DomainClass::DominantOnly),
            ExtensionId::H2(Mixing::Lambda(l)) => {
                if *l == 0.0 {
                    Some(DomainClass::DominantOnly)
                } else {
                    Some(DomainClass::Mixed(*l))
                }
            }
            ExtensionId::H2(Mixing::SubdominantOnly) | ExtensionId::H3Infinity => {
                Some(DomainClass::SubdominantOnly)
            }
            _ => None,
        }
    }
}

impl std::fmt::Display for ExtensionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtensionId::H1 => write!(f, "H1"),
            ExtensionId::H2(m) => write!(f, "H2({m})"),
            ExtensionId::H3Infinity => write!(f, "H3Infinity"),
            ExtensionId::FreeWholeAxis => write!(f, "FreeWholeAxis"),
            ExtensionId::FreeSemiaxisN(k) => write!(f, "FreeSemiaxisN({k})"),
            ExtensionId::FreeSemiaxisA(k) => write!(f, "FreeSemiaxisA({k})"),
            ExtensionId::IntervalDirichlet => write!(f, "IntervalDirichlet"),
        }
    }
}

impl std::str::FromStr for ExtensionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        // normalize the name part only; the parenthesized argument may carry
        // a minus sign that must survive
        let (head_raw, arg) = match compact.split_once('(') {
            Some((h, rest)) => match rest.strip_suffix(')') {
                Some(a) => (h, Some(a)),
                None => return Err(Error::BadConfig(format!("unbalanced parens in '{s}'"))),
            },
            None => (compact.as_str(), None),
        };
        let head: String = head_raw
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect::<String>()
            .to_ascii_lowercase();
        match (head.as_str(), arg) {
            ("h1", None) => Ok(ExtensionId::H1),
            ("h3infinity" | "h3inf", None) => Ok(ExtensionId::H3Infinity),
            ("freewholeaxis", None) => Ok(ExtensionId::FreeWholeAxis),
            ("intervaldirichlet", None) => Ok(ExtensionId::IntervalDirichlet),
            ("h2", Some(a)) => {
                let norm = a.to_ascii_lowercase();
                if norm == "subdominantonly" || norm == "inf" {
                    Ok(ExtensionId::H2(Mixing::SubdominantOnly))
                } else {
                    a.parse::<f64>()
                        .map(|l| ExtensionId::H2(Mixing::Lambda(l)))
                        .map_err(|_| Error::BadConfig(format!("bad mixing '{a}'")))
                }
            }
            ("freesemiaxisn", Some(a)) => a
                .parse::<u8>()
                .map(ExtensionId::FreeSemiaxisN)
                .map_err(|_| Error::BadConfig(format!("bad family index '{a}'"))),
            ("freesemiaxisa", Some(a)) => a
                .parse::<u8>()
                .map(ExtensionId::FreeSemiaxisA)
                .map_err(|_| Error::BadConfig(format!("bad family index '{a}'"))),
            _ => Err(Error::BadConfig(format!("unknown extension '{s}'"))),
        }
    }
}

/// First matrix row of the direct Hamiltonian, by construction kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BoundaryRow {
    /// psi vanishes at the boundary point; row is the plain interior stencil.
    Dirichlet,
    /// Homogeneous two-point constraint w_ghost psi(x_0) + w_first psi(x_1) = 0
    /// pinning the discrete solution to the reference ratio at the truncated
    /// endpoint: the discrete Wronskian W(psi, u_ref) vanishes there.
    GhostFold { w_ghost: f64, w_first: f64 },
    /// Half-cell row at a regular endpoint kept as an unknown, with
    /// theta = u_ref'(0) / u_ref(0).
    HalfCellRobin { theta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryCondition {
    pub basis: AsymptoticBasis,
    pub mixing: Option<Mixing>,
    pub row: BoundaryRow,
}

impl BoundaryCondition {
    pub fn dirichlet() -> Self {
        BoundaryCondition {
            basis: AsymptoticBasis::TwoExponent { p_plus: 1.0, p_minus: 0.0 },
            mixing: None,
            row: BoundaryRow::Dirichlet,
        }
    }

}

/// Realize the extension as a boundary row on this grid.
///
/// Truncated singular endpoint (x_min > 0): ghost fold against the closed-form
/// reference u_ref. The fold ratio must come from the exact u_ref, not a
/// discrete solve: neighboring extensions differ at the endpoint only at
/// O(eps^{2 kappa}) and any extra error there selects the wrong one.
/// Regular endpoint (x_min = 0, alpha = 0): half-cell Robin row, second order.
pub fn boundary_row(
    ext: &ExtensionId,
    coupling: &CouplingParams,
    grid: &Grid,
) -> Result<BoundaryCondition> {
    let kappa = coupling.kappa;
    let basis = AsymptoticBasis::for_coupling(coupling);
    let bad = || Error::IncompatibleExtension { ext: ext.to_string(), kappa };

    match ext {
        ExtensionId::H1 => {
            if kappa < 1.0 {
                return Err(bad());
            }
            Ok(BoundaryCondition { basis, mixing: None, row: BoundaryRow::Dirichlet })
        }
        ExtensionId::H2(mix) => {
            if !(kappa > 0.0 && kappa < 1.0) {
                return Err(bad());
            }
            if grid.x_min == 0.0 {
                // only the regular potential reaches the origin
                if coupling.alpha() != 0.0 {
                    return Err(bad());
                }
                let row = match mix {
                    Mixing::Lambda(l) if *l == 0.0 => BoundaryRow::Dirichlet,
                    Mixing::Lambda(l) => BoundaryRow::HalfCellRobin { theta: 1.0 / l },
                    Mixing::SubdominantOnly => BoundaryRow::HalfCellRobin { theta: 0.0 },
                };
                Ok(BoundaryCondition { basis, mixing: Some(*mix), row })
            } else {
                let (p, m) = coupling.exponents();
                let u = |x: f64| match mix {
                    Mixing::Lambda(l) => x.powf(p) + l * x.powf(m),
                    Mixing::SubdominantOnly => x.powf(m),
                };
                let x0 = grid.points()[0];
                let x1 = grid.points()[1];
                Ok(BoundaryCondition {
                    basis,
                    mixing: Some(*mix),
                    row: BoundaryRow::GhostFold { w_ghost: u(x1), w_first: -u(x0) },
                })
            }
        }
        ExtensionId::H3Infinity => {
            if kappa != 0.0 {
                return Err(bad());
            }
            let x0 = grid.points()[0];
            let x1 = grid.points()[1];
            Ok(BoundaryCondition {
                basis,
                mixing: Some(Mixing::SubdominantOnly),
                row: BoundaryRow::GhostFold { w_ghost: x1.sqrt(), w_first: -x0.sqrt() },
            })
        }
        ExtensionId::FreeWholeAxis => {
            if grid.x_min != -grid.x_max {
                return Err(Error::BadGridSpec(format!(
                    "whole-axis box must be symmetric, got [{}, {}]",
                    grid.x_min, grid.x_max
                )));
            }
            Ok(BoundaryCondition { basis, mixing: None, row: BoundaryRow::Dirichlet })
        }
        ExtensionId::FreeSemiaxisN(_) => {
            Ok(BoundaryCondition { basis, mixing: None, row: BoundaryRow::Dirichlet })
        }
        // No boundary-row identification is on file for the A-side free
        // factorizations; refuse rather than guess.
        ExtensionId::FreeSemiaxisA(_) => Err(bad()),
        ExtensionId::IntervalDirichlet => {
            Ok(BoundaryCondition { basis, mixing: None, row: BoundaryRow::Dirichlet })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorizationKind {
    N1,
    N2,
    A1,
    A2,
    CaseBN,
    CaseBA,
}

impl std::fmt::Display for FactorizationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FactorizationKind::N1 => "N1",
            FactorizationKind::N2 => "N2",
            FactorizationKind::A1 => "A1",
            FactorizationKind::A2 => "A2",
            FactorizationKind::CaseBN => "CaseB_N",
            FactorizationKind::CaseBA => "CaseB_A",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for FactorizationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let c: String = s.chars().filter(|c| *c != '-' && *c != '_').collect();
        match c.to_ascii_lowercase().as_str() {
            "n1" => Ok(FactorizationKind::N1),
            "n2" => Ok(FactorizationKind::N2),
            "a1" => Ok(FactorizationKind::A1),
            "a2" => Ok(FactorizationKind::A2),
            "casebn" | "bn" => Ok(FactorizationKind::CaseBN),
            "caseba" | "ba" => Ok(FactorizationKind::CaseBA),
            other => Err(Error::BadConfig(format!("unknown factorization kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum IdentParams {
    Mu(f64),
    Rho(f64),
    KappaC { kappa: f64, c: f64 },
}

/// The identification table. Pure lookup: which named realization each
/// factorized operator is.
///
/// Power-law rows (mu family has coupling mu^2 - mu, rho family rho^2 + rho):
///   N1(mu):  mu >= 3/2 -> H1;     3/2 > mu > 1/2 -> H2(0);
///            mu = 1/2 -> H3Inf;   1/2 > mu > 0   -> H2(SubdominantOnly)
///   A2(mu):  same first three;    1/2 > mu > 0   -> H2(0)
///   A1(rho): rho >= 1/2 -> H1;    1/2 > rho > 0  -> H2(SubdominantOnly)
///   N2(rho): rho >= 1/2 -> H1;    1/2 > rho > 0  -> H2(0)
/// General-c rows, 0 < c < inf:
///   N-kind:  kappa >= 1 -> H1;    0 < kappa < 1, kappa != 1/2 -> H2(0)
///   A-kind:  kappa >= 1 -> H1;    0 < kappa < 1, kappa != 1/2 -> H2(c)
pub fn identify_factorization(
    case: CaseLabel,
    kind: FactorizationKind,
    params: IdentParams,
) -> Result<ExtensionId> {
    use FactorizationKind::*;
    let outside = |msg: String| Err(Error::OutsideTabulatedRange(msg));

    match (kind, params) {
        (N1, IdentParams::Mu(mu)) | (A2, IdentParams::Mu(mu)) => {
            if case != CaseLabel::C {
                return outside(format!("kind {kind} is tabulated only for power-law rows"));
            }
            if mu >= 1.5 {
                Ok(ExtensionId::H1)
            } else if mu > 0.5 {
                Ok(ExtensionId::H2(Mixing::Lambda(0.0)))
            } else if mu == 0.5 {
                Ok(ExtensionId::H3Infinity)
            } else if mu > 0.0 {
                Ok(match kind {
                    N1 => ExtensionId::H2(Mixing::SubdominantOnly),
                    _ => ExtensionId::H2(Mixing::Lambda(0.0)),
                })
            } else {
                outside(format!("{kind} needs mu > 0, got {mu}"))
            }
        }
        (A1, IdentParams::Rho(rho)) | (N2, IdentParams::Rho(rho)) => {
            if case != CaseLabel::C {
                return outside(format!("kind {kind} is tabulated only for power-law rows"));
            }
            if rho >= 0.5 {
                Ok(ExtensionId::H1)
            } else if rho > 0.0 {
                Ok(match kind {
                    A1 => ExtensionId::H2(Mixing::SubdominantOnly),
                    _ => ExtensionId::H2(Mixing::Lambda(0.0)),
                })
            } else {
                outside(format!("{kind} needs rho > 0, got {rho}"))
            }
        }
        (CaseBN, IdentParams::KappaC { kappa, c }) | (CaseBA, IdentParams::KappaC { kappa, c }) => {
            if case != CaseLabel::B || !(c > 0.0) || !c.is_finite() {
                return outside(format!("kind {kind} needs case-general rows with finite c > 0"));
            }
            if kappa >= 1.0 {
                Ok(ExtensionId::H1)
            } else if kappa == 0.5 {
                outside("kappa = 1/2 row is not tabulated for general c".into())
            } else if kappa > 0.0 {
                Ok(match kind {
                    CaseBN => ExtensionId::H2(Mixing::Lambda(0.0)),
                    _ => ExtensionId::H2(Mixing::Lambda(c)),
                })
            } else {
                outside(format!("{kind} needs kappa > 0, got {kappa}"))
            }
        }
        (k, p) => Err(Error::BadConfig(format!("kind {k} does not take params {p:?}"))),
    }
}

/// Sharp bound on the number of negative levels.
pub fn negative_level_bound(ext: &ExtensionId, alpha: f64) -> Result<usize> {
    if alpha < -0.25 {
        return Err(Error::AlphaBelowCritical(alpha));
    }
    if alpha >= 0.75 {
        return Ok(0);
    }
    // deficiency index 1: at most one negative level, attained only by the
    // realizations outside the nonnegative catalog
    match ext {
        ExtensionId::H2(Mixing::Lambda(l)) if *l < 0.0 => Ok(1),
        _ => Ok(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretization::{build_grid, GridScheme};
    use crate::superpotentials::{derive_coupling, partner_coupling};
    use CaseLabel::{B, C};
    use FactorizationKind::*;

    fn ident(case: CaseLabel, kind: FactorizationKind, p: IdentParams) -> String {
        identify_factorization(case, kind, p).unwrap().to_string()
    }

    #[test]
    fn table_rows_pinned() {
        assert_eq!(ident(C, N1, IdentParams::Mu(2.0)), "H1");
        assert_eq!(ident(C, N1, IdentParams::Mu(1.0)), "H2(0)");
        assert_eq!(ident(C, N1, IdentParams::Mu(0.5)), "H3Infinity");
        assert_eq!(ident(C, N1, IdentParams::Mu(0.3)), "H2(SubdominantOnly)");
        assert_eq!(ident(C, A2, IdentParams::Mu(0.3)), "H2(0)");
        assert_eq!(ident(C, A1, IdentParams::Rho(0.3)), "H2(SubdominantOnly)");
        assert_eq!(ident(C, N2, IdentParams::Rho(0.3)), "H2(0)");
        assert_eq!(ident(B, CaseBN, IdentParams::KappaC { kappa: 0.7, c: 2.0 }), "H2(0)");
        assert_eq!(ident(B, CaseBA, IdentParams::KappaC { kappa: 0.7, c: 2.0 }), "H2(2)");
        assert_eq!(ident(B, CaseBN, IdentParams::KappaC { kappa: 1.3, c: 2.0 }), "H1");
    }

    #[test]
    fn table_edges() {
        assert_eq!(ident(C, N1, IdentParams::Mu(1.5)), "H1");
        assert_eq!(ident(C, A2, IdentParams::Mu(0.5)), "H3Infinity");
        assert_eq!(ident(C, A1, IdentParams::Rho(0.5)), "H1");
        assert_eq!(ident(C, N2, IdentParams::Rho(0.5)), "H1");
        assert!(matches!(
            identify_factorization(C, N1, IdentParams::Mu(0.0)),
            Err(Error::OutsideTabulatedRange(_))
        ));
        assert!(matches!(
            identify_factorization(C, A1, IdentParams::Rho(-0.2)),
            Err(Error::OutsideTabulatedRange(_))
        ));
        assert!(matches!(
            identify_factorization(B, CaseBN, IdentParams::KappaC { kappa: 0.5, c: 1.0 }),
            Err(Error::OutsideTabulatedRange(_))
        ));
        // case A rows are not in the table at all
        assert!(matches!(
            identify_factorization(CaseLabel::A, N1, IdentParams::Mu(1.0)),
            Err(Error::OutsideTabulatedRange(_))
        ));
        assert!(matches!(
            identify_factorization(C, N1, IdentParams::Rho(0.3)),
            Err(Error::BadConfig(_))
        ));
    }

    #[test]
    fn identified_extensions_respect_kappa_invariant() {
        // H1 appears exactly when the factorized coupling has kappa >= 1
        for i in 1..200 {
            let mu = i as f64 * 0.02;
            let alpha = mu * mu - mu;
            let kappa = (alpha + 0.25).sqrt();
            if let Ok(ext) = identify_factorization(C, N1, IdentParams::Mu(mu)) {
                assert_eq!(matches!(ext, ExtensionId::H1), kappa >= 1.0, "mu = {mu}");
            }
            let rho = i as f64 * 0.02;
            let alpha1 = rho * rho + rho;
            let kappa1 = (alpha1 + 0.25).sqrt();
            assert!((kappa1 - (rho + 0.5)).abs() < 1e-12);
            if let Ok(ext) = identify_factorization(C, N2, IdentParams::Rho(rho)) {
                assert_eq!(matches!(ext, ExtensionId::H1), kappa1 >= 1.0, "rho = {rho}");
            }
        }
    }

    #[test]
    fn partner_kind_disagreement_at_small_mu() {
        // the one parameter band where the two orderings of the same factors
        // yield different realizations
        let n1 = identify_factorization(C, N1, IdentParams::Mu(0.3)).unwrap();
        let a2 = identify_factorization(C, A2, IdentParams::Mu(0.3)).unwrap();
        assert_ne!(n1, a2);
        assert_eq!(n1.expected_membership(), Some(DomainClass::SubdominantOnly));
        assert_eq!(a2.expected_membership(), Some(DomainClass::DominantOnly));
        let a1 = identify_factorization(C, A1, IdentParams::Rho(0.3)).unwrap();
        let n2 = identify_factorization(C, N2, IdentParams::Rho(0.3)).unwrap();
        assert_ne!(a1, n2);
    }

    #[test]
    fn deficiency_indices() {
        assert_eq!(ExtensionId::H1.deficiency_index(), 0);
        assert_eq!(ExtensionId::H2(Mixing::Lambda(0.0)).deficiency_index(), 1);
        assert_eq!(ExtensionId::H3Infinity.deficiency_index(), 1);
        assert_eq!(ExtensionId::FreeWholeAxis.deficiency_index(), 0);
        assert_eq!(ExtensionId::FreeSemiaxisN(1).deficiency_index(), 1);
        assert_eq!(ExtensionId::IntervalDirichlet.deficiency_index(), 0);
    }

    #[test]
    fn display_round_trips() {
        let ids = [
            ExtensionId::H1,
            ExtensionId::H2(Mixing::Lambda(0.0)),
            ExtensionId::H2(Mixing::Lambda(2.0)),
            ExtensionId::H2(Mixing::Lambda(-1.0)),
            ExtensionId::H2(Mixing::SubdominantOnly),
            ExtensionId::H3Infinity,
            ExtensionId::FreeWholeAxis,
            ExtensionId::FreeSemiaxisN(1),
            ExtensionId::FreeSemiaxisA(2),
            ExtensionId::IntervalDirichlet,
        ];
        for id in ids {
            let s = id.to_string();
            let back: ExtensionId = s.parse().unwrap();
            assert_eq!(back, id, "{s}");
        }
        assert_eq!("H2(SubdominantOnly)".parse::<ExtensionId>().unwrap(),
            ExtensionId::H2(Mixing::SubdominantOnly));
        assert!("H5".parse::<ExtensionId>().is_err());
    }

    #[test]
    fn h1_row_is_dirichlet_and_needs_large_kappa() {
        let g = build_grid(1e-3, 10.0, 100, GridScheme::LogUniform).unwrap();
        let c = derive_coupling(2.0).unwrap(); // kappa = 3/2
        let bc = boundary_row(&ExtensionId::H1, &c, &g).unwrap();
        assert_eq!(bc.row, BoundaryRow::Dirichlet);

        let c = derive_coupling(0.24).unwrap(); // kappa = 0.7
        assert!(matches!(
            boundary_row(&ExtensionId::H1, &c, &g),
            Err(Error::IncompatibleExtension { .. })
        ));
    }

    #[test]
    fn ghost_fold_ratio_matches_reference() {
        let g = build_grid(1e-3, 10.0, 100, GridScheme::LogUniform).unwrap();
        let c = derive_coupling(-0.1).unwrap();
        let (p, m) = c.exponents();
        let bc = boundary_row(&ExtensionId::H2(Mixing::Lambda(0.0)), &c, &g).unwrap();
        match bc.row {
            BoundaryRow::GhostFold { w_ghost, w_first } => {
                let x0 = g.points()[0];
                let x1 = g.points()[1];
                let gamma = -w_first / w_ghost;
                assert!((gamma - (x0 / x1).powf(p)).abs() < 1e-15);
            }
            other => panic!("expected ghost fold, got {other:?}"),
        }
        let bc = boundary_row(&ExtensionId::H2(Mixing::Lambda(3.0)), &c, &g).unwrap();
        match bc.row {
            BoundaryRow::GhostFold { w_ghost, w_first: _ } => {
                let x1 = g.points()[1];
                assert!((w_ghost - (x1.powf(p) + 3.0 * x1.powf(m))).abs() < 1e-15);
            }
            other => panic!("expected ghost fold, got {other:?}"),
        }
    }

    #[test]
    fn regular_endpoint_rows() {
        let g = build_grid(0.0, 40.0, 100, GridScheme::Uniform).unwrap();
        let c = derive_coupling(0.0).unwrap(); // kappa = 1/2, reference x + lambda

        let bc = boundary_row(&ExtensionId::H2(Mixing::Lambda(1.0)), &c, &g).unwrap();
        assert_eq!(bc.row, BoundaryRow::HalfCellRobin { theta: 1.0 });

        let bc = boundary_row(&ExtensionId::H2(Mixing::Lambda(-1.0)), &c, &g).unwrap();
        assert_eq!(bc.row, BoundaryRow::HalfCellRobin { theta: -1.0 });

        let bc = boundary_row(&ExtensionId::H2(Mixing::Lambda(0.0)), &c, &g).unwrap();
        assert_eq!(bc.row, BoundaryRow::Dirichlet);

        let bc = boundary_row(&ExtensionId::H2(Mixing::SubdominantOnly), &c, &g).unwrap();
        assert_eq!(bc.row, BoundaryRow::HalfCellRobin { theta: 0.0 });

        // singular coupling cannot reach the origin
        let cs = derive_coupling(0.2).unwrap();
        assert!(boundary_row(&ExtensionId::H2(Mixing::Lambda(1.0)), &cs, &g).is_err());
    }

    #[test]
    fn whole_axis_box_must_be_symmetric() {
        let c = derive_coupling(0.0).unwrap();
        let g = build_grid(-40.0, 40.0, 100, GridScheme::Uniform).unwrap();
        assert!(boundary_row(&ExtensionId::FreeWholeAxis, &c, &g).is_ok());
        let g = build_grid(-30.0, 40.0, 100, GridScheme::Uniform).unwrap();
        assert!(matches!(
            boundary_row(&ExtensionId::FreeWholeAxis, &c, &g),
            Err(Error::BadGridSpec(_))
        ));
    }

    #[test]
    fn a_side_free_row_refused() {
        let c = derive_coupling(0.0).unwrap();
        let g = build_grid(1e-3, 40.0, 100, GridScheme::LogUniform).unwrap();
        assert!(matches!(
            boundary_row(&ExtensionId::FreeSemiaxisA(1), &c, &g),
            Err(Error::IncompatibleExtension { .. })
        ));
    }

    #[test]
    fn negative_level_bounds_pinned() {
        assert_eq!(negative_level_bound(&ExtensionId::H1, 1.0).unwrap(), 0);
        assert_eq!(
            negative_level_bound(&ExtensionId::H2(Mixing::Lambda(0.0)), -0.1).unwrap(),
            0
        );
        assert_eq!(
            negative_level_bound(&ExtensionId::H2(Mixing::Lambda(-1.0)), 0.0).unwrap(),
            1
        );
        assert_eq!(
            negative_level_bound(&ExtensionId::H2(Mixing::SubdominantOnly), -0.2).unwrap(),
            0
        );
        assert!(matches!(
            negative_level_bound(&ExtensionId::H1, -0.3),
            Err(Error::AlphaBelowCritical(_))
        ));
    }

    #[test]
    fn partner_coupling_feeds_the_rho_rows() {
        // rho-family coupling equals the partner coupling of mu = rho
        let rho = 0.3;
        let pair = partner_coupling(rho).unwrap();
        let c = derive_coupling(pair.alpha1).unwrap();
        assert!((c.kappa - (rho + 0.5)).abs() < 1e-12);
    }
}
