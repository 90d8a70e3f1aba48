use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use cgt_core::permgrp::{
    all_subgroups, c9_conjugacy_census, centralizer, conjugacy_classes, d18_extension_census, find_element_of_order,
    generation_check, is_conjugate, parse_gens, sylow3_by_ascent, Budget, Permutation, StabilizerChain,
};
use clap::Subcommand;
use serde_json::json;

use crate::{print_json, read, CliError, Config, OutputFormat};

/// A permutation argument is either cycle notation or a generator file whose
/// first generator is taken.
#[derive(Subcommand)]
pub enum PgCommand {
    /// Group order.
    Order { gens: PathBuf },
    /// Conjugacy classes (exhaustive up to 100000 elements, else sampled and certified).
    Classes {
        gens: PathBuf,
        /// Random elements drawn on the sampled path.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Centralizer of an element.
    Centralizer {
        gens: PathBuf,
        #[arg(long)]
        elt: String,
    },
    /// An element conjugating x to y, if any.
    Conjugate {
        gens: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Subgroups of a group of order at most 1000.
    Subgroups {
        gens: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_order: usize,
    },
    /// A Sylow 3-subgroup grown from a 3-element.
    Sylow3 { gens: PathBuf },
    /// An element of the given order.
    Element {
        gens: PathBuf,
        #[arg(long)]
        order: u64,
    },
    /// Conjugacy of the cyclic subgroups of order 9.
    C9census { gens: PathBuf },
    /// D18 subgroups over a cyclic subgroup of order 9.
    D18census {
        gens: PathBuf,
        /// Generator file for the cyclic subgroup of order 9.
        #[arg(long)]
        c9: PathBuf,
    },
    /// Order of the group generated by a subgroup of order 1512 and one more element.
    Generate {
        gens: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        #[arg(long)]
        ext: String,
    },
}

fn load_gens(path: &Path) -> Result<(usize, Vec<Permutation>), CliError> {
    parse_gens(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<StabilizerChain, CliError> {
    let (n, g) = load_gens(path)?;
    Ok(StabilizerChain::new(n, &g)?)
}

fn perm_arg(arg: &str, degree: usize) -> Result<Permutation, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let (n, g) = load_gens(path)?;
        if n != degree {
            return Err(CliError::Input(format!("{arg}: degree {n}, expected {degree}")));
        }
        return g.into_iter().next().ok_or_else(|| CliError::Input(format!("{arg}: no generator")));
    }
    Permutation::parse(arg, degree).map_err(|e| CliError::Input(format!("{arg}: {e}")))
}

fn strs(gs: &[Permutation]) -> Vec<String> {
    gs.iter().map(|g| g.to_string()).collect()
}

pub fn run(cfg: &Config, cmd: PgCommand) -> Result<(), CliError> {
    let json = cfg.format == OutputFormat::Json;
    let mut budget = Budget::new(cfg.budget);
    match cmd {
        PgCommand::Order { gens } => {
            let g = load(&gens)?;
            if json {
                print_json(&json!({"order": g.order().to_string(), "degree": g.degree()}));
            } else {
                println!("{}", g.order());
            }
        }
        PgCommand::Classes { gens, samples } => {
            let g = load(&gens)?;
            let cl = conjugacy_classes(&g, cfg.seed, samples, &mut budget)?;
            if json {
                let classes: Vec<_> = cl
                    .classes
                    .iter()
                    .map(|c| {
                        json!({
                            "element_order": c.element_order,
                            "size": c.size.to_string(),
                            "centralizer_order": c.centralizer_order.to_string(),
                            "representative": c.representative.to_string(),
                        })
                    })
                    .collect();
                print_json(&json!({
                    "order": g.order().to_string(),
                    "complete": cl.complete,
                    "exhaustive": cl.exhaustive,
                    "seed": cfg.seed,
                    "classes": classes,
                }));
            } else {
                println!("{} classes, complete: {}, exhaustive: {}", cl.classes.len(), cl.complete, cl.exhaustive);
                println!("{:>6} {:>12} {:>12}  representative", "order", "size", "centralizer");
                for c in &cl.classes {
                    println!("{:>6} {:>12} {:>12}  {}", c.element_order, c.size, c.centralizer_order, c.representative);
                }
            }
            if !cl.complete {
                return Err(CliError::Failed("class sizes do not yet sum to the group order".into()));
            }
        }
        PgCommand::Centralizer { gens, elt } => {
            let g = load(&gens)?;
            let x = perm_arg(&elt, g.degree())?;
            let c = centralizer(&g, &x, &mut budget)?;
            if json {
                print_json(&json!({"order": c.order().to_string(), "generators": strs(c.generators())}));
            } else {
                println!("order {}", c.order());
                for s in c.generators() {
                    println!("{s}");
                }
            }
        }
        PgCommand::Conjugate { gens, x, y } => {
            let g = load(&gens)?;
            let (x, y) = (perm_arg(&x, g.degree())?, perm_arg(&y, g.degree())?);
            let w = is_conjugate(&g, &x, &y, &mut budget)?;
            if json {
                print_json(&json!({"conjugate": w.is_some(), "witness": w.as_ref().map(|w| w.to_string())}));
            } else {
                match w {
                    Some(w) => println!("conjugate by {w}"),
                    None => println!("not conjugate"),
                }
            }
        }
        PgCommand::Subgroups { gens, min_order } => {
            let g = load(&gens)?;
            let subs: Vec<_> = all_subgroups(&g)?.into_iter().filter(|s| s.order >= min_order).collect();
            if json {
                let list: Vec<_> = subs
                    .iter()
                    .map(|s| json!({"order": s.order, "cyclic": s.is_cyclic(), "generators": strs(&s.generators)}))
                    .collect();
                print_json(&json!({"count": subs.len(), "subgroups": list}));
            } else {
                let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
                for s in &subs {
                    *by_order.entry(s.order).or_default() += 1;
                }
                println!("{} subgroups", subs.len());
                for (o, n) in &by_order {
                    println!("  order {o}: {n}");
                }
                for s in &subs {
                    println!("{} {}", s.order, strs(&s.generators).join(" "));
                }
            }
        }
        PgCommand::Sylow3 { gens } => {
            let g = load(&gens)?;
            let seed = find_element_of_order(&g, 3, cfg.seed).unwrap_or_else(|_| g.identity());
            let p = sylow3_by_ascent(&g, &seed, &mut budget)?;
            if json {
                print_json(&json!({"order": p.order().to_string(), "generators": strs(p.generators())}));
            } else {
                println!("order {}", p.order());
                for s in p.generators() {
                    println!("{s}");
                }
            }
        }
        PgCommand::Element { gens, order } => {
            let g = load(&gens)?;
            let x = find_element_of_order(&g, order, cfg.seed)?;
            if json {
                print_json(&json!({"order": order, "element": x.to_string()}));
            } else {
                println!("DEGREE {}\nGEN {x}", g.degree());
            }
        }
        PgCommand::C9census { gens } => {
            let g = load(&gens)?;
            let c = c9_conjugacy_census(&g, cfg.seed, &mut budget)?;
            if json {
                let witnesses: Vec<_> = c
                    .witnesses
                    .iter()
                    .map(|(i, j, k, w)| json!({"from": i, "to": j, "power": k, "conjugator": w.to_string()}))
                    .collect();
                print_json(&json!({
                    "sylow_order": c.sylow_order.to_string(),
                    "subgroups": strs(&c.generators),
                    "classes": c.classes,
                    "verdict": c.verdict(),
                    "witnesses": witnesses,
                }));
            } else {
                println!("Sylow 3-subgroup of order {}", c.sylow_order);
                println!("{} cyclic subgroups of order 9", c.generators.len());
                for (i, j, k, _) in &c.witnesses {
                    println!("  x{i}^w = x{j}^{k}");
                }
                println!("{}", c.verdict());
            }
        }
        PgCommand::D18census { gens, c9 } => {
            let g = load(&gens)?;
            let (n, cg) = load_gens(&c9)?;
            if n != g.degree() {
                return Err(CliError::Input(format!("{}: degree {n}, expected {}", c9.display(), g.degree())));
            }
            let sub = g.subgroup(&cg)?;
            if sub.order_u64() != Some(9) {
                return Err(CliError::Input(format!("{}: generates a group of order {}, not 9", c9.display(), sub.order())));
            }
            let x = find_element_of_order(&sub, 9, cfg.seed)
                .map_err(|_| CliError::Input(format!("{}: subgroup is not cyclic", c9.display())))?;
            let d = d18_extension_census(&g, &x, &mut budget)?;
            if json {
                print_json(&json!({
                    "centralizer_order": d.centralizer_order.to_string(),
                    "normalizer_order": d.normalizer_order.to_string(),
                    "inverting_involutions": d.inverting_involutions,
                    "dihedral_subgroups": d.dihedral_subgroups,
                    "count": d.classes,
                }));
            } else {
                println!("|C(x)| = {}, |N(<x>)| = {}", d.centralizer_order, d.normalizer_order);
                println!("{} inverting involutions, {} D18 subgroups", d.inverting_involutions, d.dihedral_subgroups);
                println!("count {}", d.classes);
            }
        }
        PgCommand::Generate { gens, sub, ext } => {
            let g = load(&gens)?;
            let (n, sg) = load_gens(&sub)?;
            if n != g.degree() {
                return Err(CliError::Input(format!("{}: degree {n}, expected {}", sub.display(), g.degree())));
            }
            let t = perm_arg(&ext, g.degree())?;
            let r = generation_check(&g, &sg, &t)?;
            if json {
                print_json(&json!({
                    "group_order": r.group_order.to_string(),
                    "sub_order": r.sub_order.to_string(),
                    "derived_order": r.derived_order.to_string(),
                    "generated_order": r.generated_order.to_string(),
                    "full": r.generates_group(),
                }));
            } else {
                println!("|H| = {}, |H'| = {}", r.sub_order, r.derived_order);
                println!("|<H, t>| = {} of {}", r.generated_order, r.group_order);
                println!("{}", if r.generates_group() { "full group" } else { "proper subgroup" });
            }
            if !r.generates_group() {
                return Err(CliError::Failed("extension does not generate the whole group".into()));
            }
        }
    }
    Ok(())
}
