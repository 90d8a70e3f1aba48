use std::path::{Path, PathBuf};
use std::sync::Arc;

use cgt_core::classops::{cmc, decompose, restrict, sum_of_irreducibles, value_on, Decomposition};
use cgt_core::tables::{
    direct_product, parse_fusion, parse_table, serialize_table, validate_table, CharacterTable, CheckStatus,
    ClassFunction,
};
use clap::{ArgGroup, Subcommand};
use serde_json::json;

use crate::{print_json, read, CliError, Config, OutputFormat};

#[derive(Subcommand)]
pub enum CtCommand {
    /// Check every table invariant.
    Validate { file: PathBuf },
    /// Decompose a character (or a sum of irreducibles) into irreducibles.
    #[command(group(ArgGroup::new("what").required(true).args(["char", "sum"])))]
    Decompose {
        file: PathBuf,
        #[arg(long = "char")]
        char: Option<String>,
        /// Irreducible names separated by '+' or ','.
        #[arg(long)]
        sum: Option<String>,
    },
    /// Write the direct product of two tables.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Restrict a character of G to H along a fusion file from H to G.
    Restrict {
        g: PathBuf,
        h: PathBuf,
        fusion: PathBuf,
        #[arg(long = "char")]
        char: String,
    },
    /// Class multiplication coefficient for classes C1, C2 and a fixed element of C3.
    Cmc { file: PathBuf, c1: String, c2: String, c3: String },
    /// Value of one character on one class.
    Value {
        file: PathBuf,
        #[arg(long = "char")]
        char: String,
        #[arg(long)]
        class: String,
    },
}

fn load(path: &Path) -> Result<Arc<CharacterTable>, CliError> {
    let text = read(path)?;
    parse_table(&text).map(Arc::new).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn split_names(s: &str) -> Vec<&str> {
    s.split(['+', ',']).map(str::trim).filter(|n| !n.is_empty()).collect()
}

fn decomposition_json(d: &Decomposition) -> serde_json::Value {
    let parts: Vec<_> = d.parts.iter().map(|(n, m)| json!({"name": n, "multiplicity": m.to_string()})).collect();
    json!({
        "parts": parts,
        "remainder_zero": d.remainder.is_zero(),
        "is_character": d.is_character(),
        "text": d.to_string(),
    })
}

fn values_json(f: &ClassFunction) -> serde_json::Value {
    let t = f.table();
    let mut m = serde_json::Map::new();
    for (i, v) in f.values().iter().enumerate() {
        m.insert(t.label(i).to_string(), v.to_string().into());
    }
    m.into()
}

pub fn run(cfg: &Config, cmd: CtCommand) -> Result<(), CliError> {
    let json = cfg.format == OutputFormat::Json;
    match cmd {
        CtCommand::Validate { file } => {
            let t = load(&file)?;
            let r = validate_table(&t);
            if json {
                let checks: Vec<_> = r
                    .checks
                    .iter()
                    .map(|c| {
                        let (status, reason) = match &c.status {
                            CheckStatus::Pass => ("pass", None),
                            CheckStatus::Fail => ("fail", None),
                            CheckStatus::Skipped(w) => ("skipped", Some(w.clone())),
                        };
                        json!({"name": c.name, "status": status, "reason": reason, "detail": c.detail})
                    })
                    .collect();
                print_json(&json!({"table": r.table, "passed": r.passed(), "checks": checks}));
            } else {
                println!("{r}");
            }
            if !r.passed() {
                return Err(CliError::Failed(format!("{}: validation failed", file.display())));
            }
        }
        CtCommand::Decompose { file, char, sum } => {
            let t = load(&file)?;
            let f = match (char, sum) {
                (Some(name), _) => t.character(&name)?,
                (None, Some(s)) => sum_of_irreducibles(&t, &split_names(&s))?,
                (None, None) => unreachable!("clap requires one of --char/--sum"),
            };
            let d = decompose(&f)?;
            if json {
                print_json(&decomposition_json(&d));
            } else {
                println!("{d}");
            }
        }
        CtCommand::Product { a, b, output } => {
            let (ta, tb) = (load(&a)?, load(&b)?);
            let p = direct_product(&ta, &tb);
            std::fs::write(&output, serialize_table(&p))
                .map_err(|e| CliError::Input(format!("{}: {e}", output.display())))?;
            if json {
                print_json(&json!({
                    "output": output.display().to_string(),
                    "name": p.name,
                    "order": p.group_order.to_string(),
                    "classes": p.class_count(),
                    "partial": p.partial,
                }));
            } else {
                println!("{}: order {}, {} classes{}", p.name, p.group_order, p.class_count(), if p.partial { ", PARTIAL" } else { "" });
                println!("wrote {}", output.display());
            }
        }
        CtCommand::Restrict { g, h, fusion, char } => {
            let (tg, th) = (load(&g)?, load(&h)?);
            let fu = parse_fusion(&read(&fusion)?, Arc::clone(&th), Arc::clone(&tg))?;
            let r = restrict(&fu, &tg.character(&char)?)?;
            let d = if th.partial { None } else { Some(decompose(&r)?) };
            if json {
                print_json(&json!({
                    "values": values_json(&r),
                    "decomposition": d.as_ref().map(decomposition_json),
                }));
            } else {
                for (i, v) in r.values().iter().enumerate() {
                    println!("{:<8} {v}", th.label(i));
                }
                if let Some(d) = d {
                    println!("= {d}");
                }
            }
        }
        CtCommand::Cmc { file, c1, c2, c3 } => {
            let t = load(&file)?;
            let v = cmc(&t, &c1, &c2, &c3)?;
            if json {
                print_json(&json!({"classes": [c1, c2, c3], "cmc": v.to_string()}));
            } else {
                println!("{v}");
            }
        }
        CtCommand::Value { file, char, class } => {
            let t = load(&file)?;
            let v = value_on(&t.character(&char)?, &class)?;
            if json {
                print_json(&json!({"char": char, "class": class, "value": v.to_string()}));
            } else {
                println!("{v}");
            }
        }
    }
    Ok(())
}
