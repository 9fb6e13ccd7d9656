//! Structural checks that every local nearring with identity must pass.

use serde::Serialize;

use crate::error::Result;
use crate::group::{Element, GroupKind};
use crate::nearring::Nearring;
use crate::properties::{
    check_elementary_noninvertibles, check_local_structure, identity_order_equals_exponent,
    is_ideal, is_local, unit_structure, Applicability, LocalStructureReport,
};
use crate::subgroup::{derived, generated};

#[derive(Clone, Debug, Serialize)]
pub struct IdealCheck {
    pub subgroup: String,
    pub is_ideal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructuralAudit {
    pub group: String,
    pub identity: Element,
    pub local: bool,
    pub identity_order_is_exponent: bool,
    pub elementary_noninvertibles: Applicability,
    pub local_structure: Option<LocalStructureReport>,
    pub ideals: Vec<IdealCheck>,
    pub violations: Vec<String>,
}

impl StructuralAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs the identity-order, non-invertible-subgroup and ideal checks.
///
/// Non-local inputs are reported with `local = false` and only the checks
/// that make sense without locality.
pub fn structural_audit(r: &Nearring) -> Result<StructuralAudit> {
    let g = r.group();
    let u = unit_structure(r)?;
    let local = is_local(r)?;
    let mut violations = Vec::new();
    let order_ok = identity_order_equals_exponent(r)?;
    let elementary = check_elementary_noninvertibles(r)?;
    let mut local_structure = None;
    let mut ideals = Vec::new();
    if local {
        if !order_ok {
            violations.push("additive order of the identity differs from the exponent".into());
        }
        if let Applicability::Fails(why) = &elementary {
            violations.push(format!("non-invertible elements: {why}"));
        }
        let ls = check_local_structure(r)?;
        if !ls.all_hold() {
            violations.push(format!(
                "non-invertible subgroup structure: {}",
                ls.failure.clone().unwrap_or_default()
            ));
        }
        local_structure = Some(ls);
        match r.descriptor().kind() {
            GroupKind::Heisenberg => {
                let d = derived(g);
                let ok = is_ideal(r, d.members())?;
                if !ok {
                    violations.push("derived subgroup is not an ideal".into());
                }
                ideals.push(IdealCheck {
                    subgroup: "derived subgroup".into(),
                    is_ideal: ok,
                });
            }
            GroupKind::MetacyclicAbelian => {
                let pi = g.multiple(u.identity, r.descriptor().p() as i64);
                let h = generated(g, &[pi]);
                let ok = is_ideal(r, h.members())?;
                if !ok {
                    violations.push("<p i> is not an ideal".into());
                }
                ideals.push(IdealCheck {
                    subgroup: "<p i>".into(),
                    is_ideal: ok,
                });
            }
            _ => {}
        }
    }
    Ok(StructuralAudit {
        group: r.descriptor().to_string(),
        identity: g.element(u.identity),
        local,
        identity_order_is_exponent: order_ok,
        elementary_noninvertibles: elementary,
        local_structure,
        ideals,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Carrier, FamilySpec};

    #[test]
    fn families_pass_structural_audit() {
        for carrier in [Carrier::G1, Carrier::G2, Carrier::G3] {
            for spec in FamilySpec::all_for(carrier, 3) {
                let a = structural_audit(&build(spec, 3).unwrap()).unwrap();
                assert!(a.passed(), "{spec}: {:?}", a.violations);
                assert!(a.local);
                assert_eq!(a.elementary_noninvertibles, Applicability::Holds, "{spec}");
            }
        }
    }
}
