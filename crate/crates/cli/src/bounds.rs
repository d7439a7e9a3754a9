use naelab::bounds::{bound_report, curves, curves_csv, fig1_csv, fig1_table, solve_system, DEFAULT_OMEGA};
use naelab::Mode;

use crate::config::{pair_value, parse_pairs, pick, Config};
use crate::usage;

#[derive(clap::Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Selection {
    /// Comparison table; only `fig1` is available.
    #[arg(long)]
    pub table: Option<String>,
    /// Bases over a δ grid: `k=K,mode=M,grid=N`.
    #[arg(long)]
    pub curve: Option<String>,
    /// RandomWalk system at one point: `k=K,delta=D[,mode=M]`.
    #[arg(long)]
    pub system: Option<String>,
    /// Every analytic quantity: `k=K[,delta=D][,mode=M]`.
    #[arg(long)]
    pub report: Option<String>,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub which: Selection,
    /// Matrix-multiplication exponent.
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub json: bool,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn run(args: Args, cfg: &Config) -> anyhow::Result<u8> {
    let omega = pick(args.omega, cfg, "omega", DEFAULT_OMEGA)?;
    let s = &args.which;
    if let Some(t) = &s.table {
        if t != "fig1" {
            return Err(usage(format!("unknown table '{t}' (expected fig1)")));
        }
        if args.json {
            println!("{}", serde_json::to_string_pretty(&fig1_table())?);
        } else {
            print!("{}", fig1_csv());
        }
    } else if let Some(pairs) = &s.curve {
        let pairs = parse_pairs(pairs)?;
        let k = pair_value::<u32>(&pairs, "k")?.ok_or_else(|| usage("--curve needs k="))?;
        let mode = pair_value::<Mode>(&pairs, "mode")?.unwrap_or(Mode::Nae);
        let grid = pair_value::<usize>(&pairs, "grid")?.unwrap_or(101);
        if grid < 2 {
            return Err(usage("grid must be at least 2"));
        }
        let rows = curves(k, mode, grid, omega)?;
        if args.json {
            println!("{}", serde_json::to_string_pretty(&rows)?);
        } else {
            print!("{}", curves_csv(&rows));
        }
    } else if let Some(pairs) = &s.system {
        let pairs = parse_pairs(pairs)?;
        let k = pair_value::<u32>(&pairs, "k")?.ok_or_else(|| usage("--system needs k="))?;
        let delta = pair_value::<f64>(&pairs, "delta")?.ok_or_else(|| usage("--system needs delta="))?;
        let mode = pair_value::<Mode>(&pairs, "mode")?.unwrap_or(Mode::Nae);
        let sol = solve_system(k, delta, mode)?;
        if args.json {
            println!("{}", serde_json::to_string_pretty(&sol)?);
        } else {
            println!("k,delta,mode,eta,theta,xi,walk_base,guess_base,gamma,crossing");
            println!(
                "{},{},{},{:.9},{:.9},{:.9},{:.9},{:.9},{:.9},{}",
                sol.k,
                sol.delta,
                sol.mode,
                sol.eta_star,
                sol.theta,
                sol.xi,
                sol.walk_base,
                sol.guess_base,
                sol.gamma,
                serde_json::to_value(sol.crossing)?.as_str().unwrap_or("?")
            );
        }
    } else if let Some(pairs) = &s.report {
        let pairs = parse_pairs(pairs)?;
        let k = pair_value::<u32>(&pairs, "k")?.ok_or_else(|| usage("--report needs k="))?;
        let delta = pair_value::<f64>(&pairs, "delta")?;
        let mode = pair_value::<Mode>(&pairs, "mode")?.unwrap_or(Mode::Nae);
        let r = bound_report(k, delta, mode, omega)?;
        if args.json {
            println!("{}", serde_json::to_string_pretty(&r)?);
        } else {
            println!("quantity,value,exact,provenance");
            for (name, v) in &r.quantities {
                let exact = r.exact.get(name).map(String::as_str).unwrap_or("");
                let prov = r.provenance.get(name).map(String::as_str).unwrap_or("");
                println!("{name},{v:.9},{exact},{}", csv_field(prov));
            }
            println!("base,{:.9},,", r.base);
        }
    }
    Ok(0)
}
