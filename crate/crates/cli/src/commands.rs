use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use ybx_core::bialgebra::{omega_checks, verify_structure};
use ybx_core::braidshuffle::{image_complex_homology, nichols_dims, verify_chain_map, verify_symmetrizer};
use ybx_core::complex::{
    bimodule_homology, cohomology_of, enumerate_cocycles, homology_of, is_cocycle, CoefficientSystem,
};
use ybx_core::cup::{verify_cup, CupConfig};
use ybx_core::exactlin::HomologyResult;
use ybx_core::io::{cochain_to_json, parse_cochain};
use ybx_core::rewrite::check_confluence;
use ybx_core::{Check, Report, Ring, Solution};

use crate::{Algebra, Format, Outcome, Source};

pub struct Output {
    pub format: Format,
}

impl Output {
    fn emit(&self, table: impl FnOnce() -> String, json: impl FnOnce() -> Value) {
        match self.format {
            Format::Table => print!("{}", table()),
            Format::Json => println!("{}", serde_json::to_string_pretty(&json()).unwrap()),
        }
    }

    fn report(&self, report: &Report) -> bool {
        self.emit(|| report.to_string(), || serde_json::to_value(report).unwrap());
        report.all_passed()
    }
}

fn coeff_name(c: &CoefficientSystem) -> String {
    match c {
        CoefficientSystem::Trivial => "trivial".into(),
        CoefficientSystem::Twisted(t) => format!("twisted:{t}"),
    }
}

fn field(ring: &str) -> Result<Ring> {
    let ring: Ring = ring.parse()?;
    if !ring.is_field() {
        bail!("this command needs a field (Q or GF:p), got {ring}");
    }
    Ok(ring)
}

pub fn validate(out: &Output, source: &Source) -> Outcome {
    let sol = source.load()?;
    let diag = sol.diagnose();
    if let Some(e) = diag.first_error() {
        out.emit(
            || format!("INVALID {e}\n"),
            || json!({"valid": false, "error": e.to_string(), "diagnostics": diag}),
        );
        return Ok(false);
    }
    let c = sol.classify();
    out.emit(
        || {
            let mut s = format!("VALID n={}\n", sol.n());
            s += &format!("involutive      {}\n", c.involutive);
            s += &format!("square_free     {}\n", c.square_free);
            s += &format!("left_invertible {}\n", c.left_invertible);
            s += &format!("right_invertible {}\n", c.right_invertible);
            s += &format!("birack          {}\n", c.birack);
            s += &format!("biquandle       {}\n", c.is_biquandle());
            if let Some(sm) = &c.biquandle_s {
                s += &format!("s               {sm:?}\n");
            }
            s += &format!("fixed_pairs     {:?}\n", c.fixed_pairs);
            let mut orders: Vec<usize> = c.orbit_orders.iter().flatten().copied().collect();
            orders.sort_unstable();
            orders.dedup();
            s += &format!("orbit_orders    {orders:?}\n");
            s
        },
        || json!({"valid": true, "n": sol.n(), "classification": c, "biquandle": c.is_biquandle()}),
    );
    Ok(true)
}

fn homology_table(h: &HomologyResult, upper: bool) -> String {
    let name = if upper { "H^" } else { "H_" };
    let mut s = format!("# ring {}\n", h.ring);
    for d in &h.degrees {
        let torsion = if d.torsion.is_empty() {
            String::new()
        } else {
            d.torsion.iter().map(|t| format!(" ⊕ Z/{t}")).collect()
        };
        s += &format!("{name}{}  rank {}{torsion}\n", d.degree, d.free_rank);
    }
    s
}

pub fn homology(
    out: &Output,
    source: &Source,
    algebra: &Algebra,
    max_degree: usize,
    cohomology: bool,
    bimodule: Option<usize>,
) -> Outcome {
    if max_degree < 1 {
        bail!("--max must be at least 1");
    }
    let sol = source.load_valid()?;
    let r = algebra.resolve()?;
    if let Some(max_length) = bimodule {
        let pieces = bimodule_homology(&sol, &r.variant, r.ring, max_length)?;
        out.emit(
            || {
                let mut s = format!("# (B/I, d) by word length, variant {:?}, ring {}\n", r.variant, r.ring);
                for p in &pieces {
                    s += &format!("length {}  dims {:?}  homology {:?}\n", p.length, p.dims, p.homology);
                }
                s
            },
            || json!({"variant": format!("{:?}", r.variant), "ring": r.ring.to_string(), "pieces": pieces}),
        );
        return Ok(true);
    }
    let h = if cohomology {
        cohomology_of(&sol, &r.coeff, &r.variant, r.ring, max_degree)?
    } else {
        homology_of(&sol, &r.coeff, &r.variant, r.ring, max_degree)?
    };
    out.emit(
        || homology_table(&h, cohomology),
        || {
            json!({
                "kind": if cohomology { "cohomology" } else { "homology" },
                "coefficients": coeff_name(&r.coeff),
                "variant": format!("{:?}", r.variant),
                "ring": h.ring.to_string(),
                "degrees": h.degrees,
            })
        },
    );
    Ok(true)
}

pub fn confluence_checks(sol: &Solution) -> Vec<Check> {
    let c = check_confluence(sol);
    vec![
        Check::from_witness(
            "overlaps x e_y z′ resolve identically",
            c.checked,
            c.unresolvable.first().map(|a| format!("({},{},{})", a.x, a.y, a.z)),
        ),
        Check::from_witness(
            "disdeg decreases at every step",
            c.checked * 6,
            (c.non_decreasing_steps > 0).then(|| format!("{} steps", c.non_decreasing_steps)),
        ),
    ]
}

pub fn verify(out: &Output, source: &Source, max_degree: usize, samples: usize, ring: &str, seed: u64) -> Outcome {
    let ring = field(ring)?;
    let sol = source.load()?;
    let diag = sol.diagnose();
    let mut report = Report::new("");
    report.push(Check::from_witness(
        "σ is a bijective solution",
        sol.n().pow(3),
        diag.first_error().map(|e| e.to_string()),
    ));
    if diag.collision.is_none() {
        let mut conf = Report::new("rewriting");
        for c in confluence_checks(&sol) {
            conf.push(c);
        }
        report.extend(conf);
        report.extend(verify_structure(&sol, max_degree, seed));
        report.extend(omega_checks(&sol));
        report.extend(verify_cup(
            &sol,
            CupConfig { ring, max_degree: max_degree.min(2), samples: Some(samples), seed },
        ));
        report.extend(verify_chain_map(&sol, max_degree.min(3), samples, seed));
    }
    Ok(out.report(&report))
}

pub fn cocycles(out: &Output, source: &Source, algebra: &Algebra, degree: usize) -> Outcome {
    let sol = source.load_valid()?;
    let r = algebra.resolve()?;
    let sp = enumerate_cocycles(&sol, &r.coeff, &r.variant, r.ring, degree)?;
    let n = sol.n();
    out.emit(
        || {
            let mut s = format!("# degree {degree}, ring {}, variant {:?}\n", r.ring, r.variant);
            s += &format!("dim Z  {}\ndim B  {}\ndim H  {}\n", sp.cocycles.len(), sp.coboundaries.len(), sp.dim_h());
            for (i, c) in sp.cocycles.iter().enumerate() {
                s += &format!("z{i}  {}\n", cochain_to_json(c, n));
            }
            s
        },
        || {
            json!({
                "degree": degree,
                "ring": r.ring.to_string(),
                "dim_z": sp.cocycles.len(),
                "dim_b": sp.coboundaries.len(),
                "dim_h": sp.dim_h(),
                "cocycles": sp.cocycles.iter().map(|c| cochain_to_json(c, n)).collect::<Vec<_>>(),
                "coboundaries": sp.coboundaries.iter().map(|c| cochain_to_json(c, n)).collect::<Vec<_>>(),
            })
        },
    );
    Ok(true)
}

fn read_cochain(path: &Path, n: usize, ring: Ring) -> Result<ybx_core::complex::Cochain> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_cochain(&text, n, ring).with_context(|| format!("parsing {}", path.display()))
}

pub fn cup(out: &Output, source: &Source, f: &Path, g: &Path, ring: &str) -> Outcome {
    let sol = source.load_valid()?;
    let ring: Ring = ring.parse()?;
    let n = sol.n();
    let (f, g) = (read_cochain(f, n, ring)?, read_cochain(g, n, ring)?);
    let product = ybx_core::cup::cup(&f, &g, &sol)?;
    let triv = CoefficientSystem::Trivial;
    let flags = [&f, &g, &product].map(|c| is_cocycle(c, &sol, &triv).is_cocycle);
    out.emit(
        || {
            format!(
                "# degree {} ⌣ degree {}\nf cocycle {}\ng cocycle {}\nproduct cocycle {}\nproduct {}\n",
                f.degree(),
                g.degree(),
                flags[0],
                flags[1],
                flags[2],
                cochain_to_json(&product, n)
            )
        },
        || {
            json!({
                "degree": product.degree(),
                "product": cochain_to_json(&product, n),
                "f_is_cocycle": flags[0],
                "g_is_cocycle": flags[1],
                "product_is_cocycle": flags[2],
            })
        },
    );
    Ok(true)
}

pub fn nichols(out: &Output, source: &Source, ring: &str, max_degree: usize) -> Outcome {
    let sol = source.load_valid()?;
    let ring = field(ring)?;
    let dims = nichols_dims(&sol, max_degree, ring)?;
    out.emit(
        || {
            let mut s = format!("# Nichols algebra of (V, −σ) over {ring}\n");
            for d in &dims {
                s += &format!("degree {}  dim {}\n", d.degree, d.dim);
            }
            s
        },
        || json!({"ring": ring.to_string(), "dims": dims}),
    );
    Ok(true)
}

pub fn compare(out: &Output, source: &Source, max_degree: usize, samples: usize, seed: u64) -> Outcome {
    let sol = source.load_valid()?;
    let mut report = Report::new("");
    report.extend(verify_chain_map(&sol, max_degree, samples, seed));
    report.extend(verify_symmetrizer(&sol, 4.min(max_degree + 1), Ring::Integers));
    Ok(out.report(&report))
}

pub fn experiment(out: &Output, source: &Source, ring: &str, max_length: usize) -> Outcome {
    let sol = source.load_valid()?;
    let ring = field(ring)?;
    let rows = image_complex_homology(&sol, ring, max_length)?;
    out.emit(
        || {
            let mut s = format!("# homology of the image of the comparison map over {ring} (reported, not asserted)\n");
            for r in &rows {
                s += &format!("length {} degree {}  rank f {}  H {}\n", r.length, r.degree, r.rank_image, r.homology);
            }
            s
        },
        || json!({"ring": ring.to_string(), "rows": rows}),
    );
    Ok(true)
}
