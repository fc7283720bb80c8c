use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use scaffolds::duality::{dualize_combination, verify_duality};
use scaffolds::evaluate::{eval_bruteforce, eval_elimination};
use scaffolds::io::{self, LoadedScheme};
use scaffolds::{CMatrix, Complex64, Diagram, Error, Result, ScaffoldTensor, TranslationScheme};
use serde_json::{json, Value};

use crate::{Command, DiagramCommand, Method, ScaffoldCommand, SchemeCommand};

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Scheme(c) => scheme(c),
        Command::Diagram(c) => diagram(c),
        Command::Scaffold(c) => scaffold(c),
    }
}

fn emit(text: &str, out: Option<&str>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Error::invalid(format!("cannot write `{path}`: {e}"))),
        None => {
            // a closed pipe (e.g. `| head`) is not an error for us
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Error::invalid(format!("cannot write to stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn translation(loaded: LoadedScheme) -> Result<TranslationScheme> {
    match loaded {
        LoadedScheme::Translation(ts) => Ok(ts),
        LoadedScheme::Explicit(_) => Err(Error::unsupported(
            "this command needs a translation scheme (kind \"translation\")",
        )),
    }
}

fn fmt_complex(z: Complex64) -> String {
    let (re, im) = (io::clean(z.re), io::clean(z.im));
    if im == 0.0 {
        format!("{re}")
    } else {
        format!("{re}{:+}i", im)
    }
}

fn fmt_matrix(name: &str, m: &CMatrix) -> String {
    let mut s = format!("{name}:\n");
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| fmt_complex(m[(r, c)])).collect();
        let _ = writeln!(s, "  [{}]", row.join(", "));
    }
    s
}

fn scheme(c: SchemeCommand) -> Result<ExitCode> {
    match c {
        SchemeCommand::Validate { scheme, json } => {
            let loaded = io::load_scheme(&scheme)?;
            let s = loaded.scheme();
            let q_poly = s.is_q_polynomial().ok();
            if json {
                let v = json!({
                    "valid": true,
                    "size": s.size(),
                    "classes": s.classes(),
                    "symmetric": s.is_symmetric(),
                    "p_polynomial": s.is_p_polynomial(),
                    "q_polynomial": q_poly,
                });
                emit(&io::to_pretty(&v), None)?;
            } else {
                let q = match q_poly {
                    Some(b) => b.to_string(),
                    None => "n/a".into(),
                };
                let line = format!(
                    "valid: {} points, {} classes, symmetric {}, P-polynomial {}, Q-polynomial {q}",
                    s.size(),
                    s.classes(),
                    s.is_symmetric(),
                    s.is_p_polynomial()
                );
                emit(&line, None)?;
            }
        }
        SchemeCommand::Params { scheme, output } => {
            let loaded = io::load_scheme(&scheme)?;
            let s = loaded.scheme();
            let text = if output.json {
                io::to_pretty(&io::params_json(s))
            } else {
                let p = s.intersection_numbers();
                let mut text = String::from("nonzero p_ij^k:\n");
                for i in 0..p.dim() {
                    for j in 0..p.dim() {
                        for k in 0..p.dim() {
                            let v = p.get(i, j, k).re.round() as i64;
                            if v != 0 {
                                let _ = writeln!(text, "  p({i},{j},{k}) = {v}");
                            }
                        }
                    }
                }
                if let Some(e) = s.eigen() {
                    text.push_str(&fmt_matrix("P", &e.p));
                    text.push_str(&fmt_matrix("Q", &e.q));
                }
                text.trim_end().to_string()
            };
            emit(&text, output.out.as_deref())?;
        }
        SchemeCommand::Dual { scheme, out } => {
            let ts = translation(io::load_scheme(&scheme)?)?;
            emit(
                &io::to_pretty(&io::translation_scheme_json(&ts.dual()?)),
                out.as_deref(),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn diagram(c: DiagramCommand) -> Result<ExitCode> {
    match c {
        DiagramCommand::Faces { diagram, output } => {
            let d = io::load_diagram(&diagram, None)?;
            let fs = d.trace_faces();
            let text = if output.json {
                io::to_pretty(&io::faces_json(&d, &fs))
            } else {
                let v = io::faces_json(&d, &fs);
                let mut text = format!(
                    "{} faces, V-E+F = {}-{}+{} = {}\n",
                    fs.faces.len(),
                    fs.vertices,
                    fs.map_edges,
                    fs.faces.len(),
                    fs.euler_characteristic()
                );
                for (f, walk) in v["faces"].as_array().into_iter().flatten().enumerate() {
                    let mut tags = Vec::new();
                    if !fs.root_faces.is_empty() && f == fs.outer {
                        tags.push("outer".to_string());
                    }
                    if let Some(i) = fs.root_faces.iter().position(|&q| q == f) {
                        tags.push(format!("q{}", i + 1));
                    }
                    let darts: Vec<&str> = walk
                        .as_array()
                        .into_iter()
                        .flatten()
                        .filter_map(Value::as_str)
                        .collect();
                    let tag = if tags.is_empty() {
                        String::new()
                    } else {
                        format!(" ({})", tags.join(", "))
                    };
                    let _ = writeln!(text, "  face {f}{tag}: {}", darts.join(" "));
                }
                text.trim_end().to_string()
            };
            emit(&text, output.out.as_deref())?;
        }
        DiagramCommand::Dual { diagram, out } => {
            let d = io::load_diagram(&diagram, None)?;
            emit(
                &io::to_pretty(&io::diagram_json(&d.dual()?)),
                out.as_deref(),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn scaffold(c: ScaffoldCommand) -> Result<ExitCode> {
    match c {
        ScaffoldCommand::Eval {
            diagram,
            scheme,
            method,
            order,
            out,
            caps,
        } => {
            let loaded = io::load_scheme(&scheme)?;
            let s = loaded.scheme();
            let d = io::load_diagram(&diagram, Some(s.classes()))?;
            let opts = caps.options();
            let t = match method {
                Method::Brute => {
                    if order.is_some() {
                        return Err(Error::invalid("--order only applies to --method elim"));
                    }
                    eval_bruteforce(&d, s, &opts)?
                }
                Method::Elim => eval_elimination(&d, s, order.as_deref(), &opts)?,
            };
            emit(&io::to_pretty(&io::tensor_json(&t)), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        ScaffoldCommand::VerifyDuality {
            diagram,
            scheme,
            tol,
            timings,
            output,
            caps,
        } => {
            let ts = translation(io::load_scheme(&scheme)?)?;
            let d = io::load_diagram(&diagram, Some(ts.classes()))?;
            let r = verify_duality(&d, &ts, tol, &caps.options())?;
            let text = if output.json {
                let mut v = io::report_json(&r);
                if !timings {
                    v.as_object_mut()
                        .expect("reports are objects")
                        .remove("timings");
                }
                io::to_pretty(&v)
            } else {
                let mut line = format!(
                    "{} order {} nodes {} scalar {} residual {:.3e} gamma {:.3e} tol {:e}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.ell,
                    r.n,
                    r.scalar,
                    r.residual,
                    r.gamma_residual,
                    r.tol
                );
                if timings {
                    let t = r.timings;
                    let _ = write!(
                        line,
                        " time {:.3}s/{:.3}s/{:.3}s",
                        t.eval_seconds, t.dual_eval_seconds, t.transform_seconds
                    );
                }
                line
            };
            emit(&text, output.out.as_deref())?;
            Ok(if r.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        ScaffoldCommand::Dualize {
            terms,
            scheme,
            out,
            caps,
        } => {
            let ts = match &scheme {
                Some(s) => Some(translation(io::load_scheme(s)?)?),
                None => None,
            };
            let classes = ts.as_ref().map(|t| t.classes());
            let parsed = parse_terms(&terms, classes)?;
            let dual = dualize_combination(&parsed)?;
            let mut listed: Vec<Value> = dual
                .iter()
                .map(|t| {
                    json!({
                        "coeff": io::complex_json(t.coeff),
                        "size_power": t.size_power,
                        "diagram": io::diagram_json(&t.diagram),
                    })
                })
                .collect();
            let mut v = json!({});
            if let Some(ts) = &ts {
                let n = ts.group().size();
                let opts = caps.options();
                let dual_ts = ts.dual()?;
                let ell = parsed.first().map_or(0, |(_, d)| d.order());
                let mut primal = ScaffoldTensor::zeros(ell, n);
                for (a, d) in &parsed {
                    primal = primal.axpy(*a, &eval_elimination(d, ts.scheme(), None, &opts)?)?;
                }
                let mut dual_sum = ScaffoldTensor::zeros(ell, n);
                for (t, entry) in dual.iter().zip(listed.iter_mut()) {
                    entry["numeric_coeff"] = io::complex_json(t.numeric_coeff(n));
                    let s = eval_elimination(&t.diagram, dual_ts.scheme(), None, &opts)?;
                    dual_sum = dual_sum.axpy(t.numeric_coeff(n), &s)?;
                }
                v["size"] = json!(n);
                v["primal_max_abs"] = json!(primal.max_abs());
                v["dual_max_abs"] = json!(dual_sum.max_abs());
            }
            v["terms"] = Value::Array(listed);
            emit(&io::to_pretty(&v), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_terms(source: &str, classes: Option<usize>) -> Result<Vec<(Complex64, Diagram)>> {
    let text = std::fs::read_to_string(source)
        .map_err(|e| Error::invalid(format!("cannot read `{source}`: {e}")))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Error::invalid(format!("terms JSON: {e}")))?;
    let terms = v["terms"]
        .as_array()
        .ok_or_else(|| Error::invalid("terms JSON: missing array field `terms`"))?;
    terms
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let coeff = match t["coeff"].as_array().map(Vec::as_slice) {
                Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                    (Some(re), Some(im)) => Complex64::new(re, im),
                    _ => return Err(Error::invalid(format!("terms[{k}].coeff must be [re, im]"))),
                },
                _ => return Err(Error::invalid(format!("terms[{k}].coeff must be [re, im]"))),
            };
            let d = match &t["diagram"] {
                Value::String(src) => io::load_diagram(src, classes)?,
                obj @ Value::Object(_) => io::parse_diagram(&obj.to_string())?,
                _ => {
                    return Err(Error::invalid(format!(
                        "terms[{k}].diagram must be an object or a source string"
                    )))
                }
            };
            Ok((coeff, d))
        })
        .collect()
}
