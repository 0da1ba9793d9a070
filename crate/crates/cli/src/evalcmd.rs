//! The `eval` subcommand: evaluate one series from JSON parameters.
//!
//! Values are printed as exact fractions `p/q` for the ordinary families
//! and as `re+imi` with an error budget for the elliptic ones.

use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::Value;

use hypersym_core::catalog::{class_for_sample, SuiteConfig};
use hypersym_core::error::Error;
use hypersym_core::rational::format_ratio;
use hypersym_core::series::{
    elliptic::ValueWithBudget, eval_4f3_terminating, eval_an_4f3, eval_e1d, eval_enm_with_budget,
    eval_hardy_3f2, EnmTermination, F4Kind, HardyVector, Series4F3An, SeriesEnm,
};

/// Usage errors exit with 2, runtime errors with 1.
pub enum EvalError {
    /// Malformed parameters.
    Usage(String),
    /// The evaluator rejected the input (pole, constraint, balancing).
    Runtime(String),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError::Usage(msg.into()))
}

fn parse_json(text: &str) -> Result<Value, EvalError> {
    serde_json::from_str(text).map_err(|e| EvalError::Usage(format!("invalid JSON: {e}")))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, EvalError> {
    v.get(key)
        .ok_or_else(|| EvalError::Usage(format!("missing field {key:?}")))
}

fn rat_from(v: &Value) -> Result<BigRational, EvalError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return usage(format!("expected rational string, got {v}")),
    };
    text.trim()
        .parse::<BigRational>()
        .map_err(|e| EvalError::Usage(format!("cannot parse rational {text:?}: {e}")))
}

fn rat_list(v: &Value) -> Result<Vec<BigRational>, EvalError> {
    v.as_array()
        .ok_or_else(|| EvalError::Usage("expected an array".into()))?
        .iter()
        .map(rat_from)
        .collect()
}

fn complex_from(v: &Value) -> Result<Complex64, EvalError> {
    let text = match v {
        Value::String(s) => s.replace(' ', ""),
        Value::Number(n) => n.to_string(),
        _ => return usage(format!("expected complex string, got {v}")),
    };
    if let Ok(z) = text.parse::<Complex64>() {
        return Ok(z);
    }
    if let Ok(re) = text.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    usage(format!("cannot parse complex {text:?}"))
}

fn complex_list(v: &Value) -> Result<Vec<Complex64>, EvalError> {
    v.as_array()
        .ok_or_else(|| EvalError::Usage("expected an array".into()))?
        .iter()
        .map(complex_from)
        .collect()
}

fn u32_from(v: &Value) -> Result<u32, EvalError> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| EvalError::Usage(format!("expected a small nonnegative integer, got {v}")))
}

fn fmt_complex(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im >= 0.0 {
        format!("{re}+{im}i")
    } else {
        format!("{re}{im}i")
    }
}

fn runtime(e: Error) -> EvalError {
    EvalError::Runtime(e.to_string())
}

fn print_budget(v: ValueWithBudget) {
    println!("{}", fmt_complex(v.value));
    println!(
        "error budget: {:.3e} absolute over {} terms",
        v.error_budget, v.terms
    );
}

/// Runs the eval subcommand.
pub fn run(family: &str, params_text: &str, cfg: &SuiteConfig) -> Result<(), EvalError> {
    let p = parse_json(params_text)?;
    match family {
        "4f3" => {
            let n_cap = u32_from(get(&p, "N")?)?;
            let a = rat_list(get(&p, "a")?)?;
            let d = rat_list(get(&p, "d")?)?;
            if a.len() != 3 || d.len() != 3 {
                return usage("4f3 needs exactly 3 upper and 3 lower parameters");
            }
            let a: [BigRational; 3] = a.try_into().expect("length checked");
            let d: [BigRational; 3] = d.try_into().expect("length checked");
            let value = eval_4f3_terminating(n_cap, &a, &d).map_err(runtime)?;
            println!("{}", format_ratio(&value));
        }
        "an4f3" => {
            let kind = match get(&p, "kind")?.as_str() {
                Some("rectangular") => {
                    let m: Vec<u32> = get(&p, "m")?
                        .as_array()
                        .ok_or_else(|| EvalError::Usage("m must be an array".into()))?
                        .iter()
                        .map(u32_from)
                        .collect::<Result<_, _>>()?;
                    F4Kind::Rectangular { m }
                }
                Some("triangular") => F4Kind::Triangular {
                    n_cap: u32_from(get(&p, "N")?)?,
                    b: rat_list(get(&p, "b")?)?,
                },
                _ => return usage("kind must be \"rectangular\" or \"triangular\""),
            };
            let series = Series4F3An {
                kind,
                x: rat_list(get(&p, "x")?)?,
                a: rat_list(get(&p, "a")?)?,
                e: {
                    let e = rat_list(get(&p, "e")?)?;
                    if e.len() != 2 {
                        return usage("e must have exactly 2 entries");
                    }
                    e.try_into().expect("length checked")
                },
                c: rat_from(get(&p, "c")?)?,
                d: rat_from(get(&p, "d")?)?,
            };
            let value = eval_an_4f3(&series).map_err(runtime)?;
            println!("{}", format_ratio(&value));
        }
        "10e9" => {
            let ep = class_for_sample(cfg, 0).map_err(runtime)?;
            let s = complex_from(get(&p, "s")?)?;
            let c = complex_list(get(&p, "c")?)?;
            if c.len() != 6 {
                return usage("10e9 needs exactly 6 c parameters");
            }
            let n_cap = u32_from(get(&p, "N")?)?;
            // Balancing is checked, never imposed.
            let sum_c: Complex64 = c.iter().sum();
            let want = ep.delta * (2.0 + n_cap as f64) + s * 3.0;
            if (sum_c - want).norm() > 1e-10 * want.norm().max(1.0) {
                return Err(EvalError::Runtime(format!(
                    "balancing condition violated: sum c = {sum_c}, (2+N) delta + 3s = {want}"
                )));
            }
            let mut params = c;
            params.push(-ep.delta * n_cap as f64);
            let v = eval_e1d(s, &params, n_cap, &ep).map_err(runtime)?;
            print_budget(v);
        }
        "enm" => {
            let ep = class_for_sample(cfg, 0).map_err(runtime)?;
            let termination = {
                let t = get(&p, "termination")?;
                if let Some(m) = t.get("rectangular") {
                    let m: Vec<u32> = m
                        .as_array()
                        .ok_or_else(|| EvalError::Usage("rectangular must be an array".into()))?
                        .iter()
                        .map(u32_from)
                        .collect::<Result<_, _>>()?;
                    EnmTermination::Rectangular(m)
                } else if let Some(n) = t.get("triangular") {
                    EnmTermination::Triangular(u32_from(n)?)
                } else {
                    return usage("termination must be {\"rectangular\": [..]} or {\"triangular\": N}");
                }
            };
            let series = SeriesEnm {
                a: complex_list(get(&p, "a")?)?,
                x: complex_list(get(&p, "x")?)?,
                s: complex_from(get(&p, "s")?)?,
                u: complex_list(get(&p, "u")?)?,
                v: complex_list(get(&p, "v")?)?,
                ep,
                termination,
            };
            let v = eval_enm_with_budget(&series).map_err(runtime)?;
            print_budget(v);
        }
        "hardy" => {
            let x = get(&p, "x")?
                .as_array()
                .ok_or_else(|| EvalError::Usage("x must be an array of 5 reals".into()))?
                .iter()
                .map(|v| {
                    v.as_f64()
                        .ok_or_else(|| EvalError::Usage(format!("expected a real, got {v}")))
                })
                .collect::<Result<Vec<f64>, _>>()?;
            if x.len() != 5 {
                return usage("hardy needs exactly 5 variables");
            }
            let terms = match p.get("terms") {
                Some(t) => u32_from(t)?,
                None => 400,
            };
            let v = HardyVector {
                x: x.try_into().expect("length checked"),
            };
            let value = eval_hardy_3f2(&v, terms).map_err(runtime)?;
            println!("{value}");
        }
        other => return usage(format!("unknown family {other:?} (4f3|an4f3|10e9|enm|hardy)")),
    }
    Ok(())
}
