use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Boundary treatment for the marching kernels.
///
/// `Outflow` leaves boundary nodes to one-sided interior differences and is
/// only valid where the velocity points out of the domain. The Dirichlet
/// kinds pin boundary nodes to data; `LargeDirichlet` emulates state
/// constraints by a value far above the solution scale. `AsymptoticLinear`
/// extrapolates each boundary node from its neighbor with a fixed slope, the
/// far-field behavior of the dual potential.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "kind",
    rename_all = "kebab-case",
    try_from = "repr::BoundaryRepr"
)]
pub enum BoundarySpec {
    Outflow,
    Dirichlet { left_value: f64, right_value: f64 },
    LargeDirichlet { large_value: f64 },
    AsymptoticLinear { left_slope: f64, right_slope: f64 },
}

/// Strict deserialization shape: internally tagged enums ignore
/// `deny_unknown_fields`, so decoding goes through a flat struct that
/// rejects stray keys and fields that do not belong to the named kind.
mod repr {
    use serde::Deserialize;

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct BoundaryRepr {
        kind: String,
        left_value: Option<f64>,
        right_value: Option<f64>,
        large_value: Option<f64>,
        left_slope: Option<f64>,
        right_slope: Option<f64>,
    }

    impl TryFrom<BoundaryRepr> for super::BoundarySpec {
        type Error = String;

        fn try_from(r: BoundaryRepr) -> Result<Self, String> {
            let fields = [
                ("left_value", r.left_value),
                ("right_value", r.right_value),
                ("large_value", r.large_value),
                ("left_slope", r.left_slope),
                ("right_slope", r.right_slope),
            ];
            let allowed: &[&str] = match r.kind.as_str() {
                "outflow" => &[],
                "dirichlet" => &["left_value", "right_value"],
                "large-dirichlet" => &["large_value"],
                "asymptotic-linear" => &["left_slope", "right_slope"],
                other => return Err(format!("unknown boundary kind `{other}`")),
            };
            for (name, value) in fields {
                if value.is_some() && !allowed.contains(&name) {
                    return Err(format!(
                        "field `{name}` does not apply to boundary kind `{}`",
                        r.kind
                    ));
                }
            }
            let require = |name: &str, v: Option<f64>| {
                v.ok_or_else(|| format!("boundary kind `{}` requires `{name}`", r.kind))
            };
            Ok(match r.kind.as_str() {
                "outflow" => super::BoundarySpec::Outflow,
                "dirichlet" => super::BoundarySpec::Dirichlet {
                    left_value: require("left_value", r.left_value)?,
                    right_value: require("right_value", r.right_value)?,
                },
                "large-dirichlet" => super::BoundarySpec::LargeDirichlet {
                    large_value: require("large_value", r.large_value)?,
                },
                _ => super::BoundarySpec::AsymptoticLinear {
                    left_slope: require("left_slope", r.left_slope)?,
                    right_slope: require("right_slope", r.right_slope)?,
                },
            })
        }
    }
}

impl BoundarySpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            BoundarySpec::Outflow => true,
            BoundarySpec::Dirichlet {
                left_value,
                right_value,
            } => left_value.is_finite() && right_value.is_finite(),
            BoundarySpec::LargeDirichlet { large_value } => {
                large_value.is_finite() && large_value > 0.0
            }
            BoundarySpec::AsymptoticLinear {
                left_slope,
                right_slope,
            } => left_slope.is_finite() && right_slope.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "invalid boundary data: {self:?}"
            )))
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            BoundarySpec::Outflow => "outflow",
            BoundarySpec::Dirichlet { .. } => "dirichlet",
            BoundarySpec::LargeDirichlet { .. } => "large-dirichlet",
            BoundarySpec::AsymptoticLinear { .. } => "asymptotic-linear",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_value_must_be_positive() {
        assert!(BoundarySpec::LargeDirichlet { large_value: 10.0 }
            .validate()
            .is_ok());
        assert!(BoundarySpec::LargeDirichlet { large_value: 0.0 }
            .validate()
            .is_err());
        assert!(BoundarySpec::Dirichlet {
            left_value: f64::NAN,
            right_value: 0.0
        }
        .validate()
        .is_err());
    }

    #[test]
    fn serde_kebab_form() {
        let b: BoundarySpec =
            serde_json::from_str(r#"{"kind":"dirichlet","left_value":1.0,"right_value":0.0}"#)
                .unwrap();
        assert_eq!(
            b,
            BoundarySpec::Dirichlet {
                left_value: 1.0,
                right_value: 0.0
            }
        );
        assert!(serde_json::from_str::<BoundarySpec>(r#"{"kind":"outflow","stray":1}"#).is_err());
    }
}
