//! Serialization of the identity catalog to a documented JSON schema so
//! external tools can consume it.
//!
//! Schema (version 1):
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "identities": [
//!     {
//!       "name": "...",
//!       "family": "F4Rect",
//!       "slots": ["a1", "a2", "c", "d", "e1", "e2"],
//!       "map": {
//!         "kind": "affine" | "duality-swap" | "duality-collapse",
//!         "matrix": [[..]],          // affine only: one row per image slot
//!                                    // over (slots..., unit, T*unit, comp-sum)
//!         "var_rule": "identity" | "reflect" | "duality"
//!       },
//!       "prefactor": {
//!         "sign_total": bool,
//!         "global_num": [[..]], "global_den": [[..]],
//!         "pervar_num": [[..]], "pervar_den": [[..]]
//!                                    // per-variable rows additionally carry
//!                                    // coefficients on x_i and comp_i
//!       },
//!       "balancing": [..]            // row vector that must vanish
//!     }
//!   ]
//! }
//! ```

use serde_json::{json, Value};

use super::entries::catalog;
use super::model::{LinExpr, MapKind, PerVarExpr, TransformIdentity, VarMap};

/// Catalog schema version.
pub const CATALOG_SCHEMA_VERSION: u32 = 1;

fn lin_row(e: &LinExpr) -> Value {
    let mut row = e.coeffs.clone();
    row.push(e.unit_const);
    row.push(e.unit_total);
    row.push(e.comp_sum);
    json!(row)
}

fn pervar_row(e: &PerVarExpr) -> Value {
    let mut row = e.base.coeffs.clone();
    row.push(e.base.unit_const);
    row.push(e.base.unit_total);
    row.push(e.base.comp_sum);
    row.push(e.x_coeff);
    row.push(e.comp_coeff);
    json!(row)
}

fn identity_json(t: &TransformIdentity) -> Value {
    let map = match &t.map {
        MapKind::Affine { param_map, var_map } => json!({
            "kind": "affine",
            "matrix": param_map.iter().map(lin_row).collect::<Vec<_>>(),
            "var_rule": match var_map {
                VarMap::Identity => "identity",
                VarMap::Reflect => "reflect",
            },
        }),
        MapKind::DualitySwap => json!({ "kind": "duality-swap", "var_rule": "duality" }),
        MapKind::DualityCollapse => {
            json!({ "kind": "duality-collapse", "var_rule": "duality" })
        }
    };
    json!({
        "name": t.name,
        "family": format!("{:?}", t.family),
        "slots": t.family.slot_names(),
        "map": map,
        "prefactor": {
            "sign_total": t.prefactor.sign_total,
            "global_num": t.prefactor.global_num.iter().map(lin_row).collect::<Vec<_>>(),
            "global_den": t.prefactor.global_den.iter().map(lin_row).collect::<Vec<_>>(),
            "pervar_num": t.prefactor.pervar_num.iter().map(pervar_row).collect::<Vec<_>>(),
            "pervar_den": t.prefactor.pervar_den.iter().map(pervar_row).collect::<Vec<_>>(),
        },
        "balancing": lin_row(&t.balancing),
    })
}

/// The whole catalog as a JSON value.
pub fn catalog_json() -> Value {
    json!({
        "schema_version": CATALOG_SCHEMA_VERSION,
        "identities": catalog().iter().map(identity_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_has_all_identities_with_required_fields() {
        let v = catalog_json();
        assert_eq!(v["schema_version"], 1);
        let ids = v["identities"].as_array().unwrap();
        assert_eq!(ids.len(), 30);
        for id in ids {
            assert!(id["name"].is_string());
            assert!(id["family"].is_string());
            assert!(id["map"]["kind"].is_string());
            assert!(id["prefactor"]["global_num"].is_array());
            assert!(id["balancing"].is_array());
            if id["map"]["kind"] == "affine" {
                let rows = id["map"]["matrix"].as_array().unwrap();
                assert_eq!(rows.len(), id["slots"].as_array().unwrap().len());
            }
        }
    }

    #[test]
    fn serialization_is_deterministic() {
        let a = serde_json::to_string(&catalog_json()).unwrap();
        let b = serde_json::to_string(&catalog_json()).unwrap();
        assert_eq!(a, b);
    }
}
