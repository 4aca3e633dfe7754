//! The `enumerate`, `poset` and `realize` subcommands.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use polyreal_core::geomesh::{self, Family, MeshMetadata, PlateauParams, RealizeOptions};
use polyreal_core::polytope::{build_polyhedron, flag_transitive, AxiomReport, FlagTransitivity};
use polyreal_core::wythoff::{build_skeleton, wythoff_dimension, wythoff_space};
use polyreal_core::{Error, Execution};
use serde::Serialize;

use crate::source::GroupSource;
use crate::Failure;

#[derive(Serialize)]
pub struct EnumerationRow {
    pub name: String,
    pub schlafli: [usize; 2],
    pub label: Option<char>,
    pub words: [String; 3],
    pub wythoff_dims: BTreeMap<String, usize>,
}

pub fn enumeration_rows(src: &GroupSource) -> Result<Vec<EnumerationRow>> {
    let reps = src.representation_names();
    src.classes
        .iter()
        .map(|c| {
            let mut dims = BTreeMap::new();
            for r in &reps {
                dims.insert(r.clone(), wythoff_dimension(&src.representation(r)?, &c.cgroup)?);
            }
            let (p, q) = c.cgroup.schlafli();
            Ok(EnumerationRow {
                name: c.name(),
                schlafli: [p, q],
                label: c.label,
                words: c.cgroup.words(),
                wythoff_dims: dims,
            })
        })
        .collect()
}

pub fn enumerate(src: &GroupSource, json: bool) -> Result<String> {
    let rows = enumeration_rows(src)?;
    if json {
        return Ok(serde_json::to_string_pretty(&rows)? + "\n");
    }
    let reps = src.representation_names();
    let width = |k: usize| rows.iter().map(|r| r.words[k].len()).max().unwrap_or(0).max(2);
    let (w0, w1, w2) = (width(0), width(1), width(2));
    let mut out = format!("{:<8} {:<5} {:<w0$} {:<w1$} {:<w2$}", "type", "index", "t0", "t1", "t2");
    for r in &reps {
        out += &format!(" {:>9}", format!("dim {r}"));
    }
    out += "\n";
    for row in &rows {
        let ty = format!("{{{},{}}}", row.schlafli[0], row.schlafli[1]);
        let label = row.label.map(String::from).unwrap_or_else(|| "-".into());
        out += &format!("{ty:<8} {label:<5} {:<w0$} {:<w1$} {:<w2$}", row.words[0], row.words[1], row.words[2]);
        for r in &reps {
            out += &format!(" {:>9}", row.wythoff_dims[r]);
        }
        out += "\n";
    }
    out += &format!("{} classes\n", rows.len());
    Ok(out)
}

pub fn write(dir: &Path, file: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(file);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

#[derive(Serialize)]
struct AxiomFile {
    name: String,
    counts: [usize; 3],
    axioms: AxiomReport,
    flag_transitivity: FlagTransitivity,
    all_pass: bool,
}

pub fn poset(src: &GroupSource, selector: &str, out: &Path, mode: Execution) -> Result<(), Failure> {
    let class = src.resolve(selector)?;
    let poly = build_polyhedron(&class.cgroup);
    let name = class.name();
    let slug = class.slug();
    let axioms = polyreal_core::polytope::verify_axioms_with(poly.poset(), mode);
    let ft = flag_transitive(&poly);
    let (v, e, f) = poly.face_counts();
    let all_pass = axioms.all_pass() && ft.is_regular();
    let report = AxiomFile { name: name.clone(), counts: [v, e, f], axioms, flag_transitivity: ft, all_pass };

    let mut written = vec![write(out, &format!("{slug}.dot"), &poly.export_hasse(&name))?];
    written.push(write(out, &format!("{slug}.poset.json"), &(serde_json::to_string_pretty(&poly.to_json(&name))? + "\n"))?);
    written.push(write(out, &format!("{slug}.axioms.json"), &(serde_json::to_string_pretty(&report)? + "\n"))?);

    println!("{name}: v={v} e={e} f={f}, {} flags in {} orbit(s)", ft.flags, ft.orbits);
    println!("axioms {}", if all_pass { "pass" } else { "FAIL" });
    for failure in &report.axioms.failures {
        println!("  {failure}");
    }
    for p in &written {
        println!("wrote {}", p.display());
    }
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Invariant(format!("{name} fails the polytope axioms")))
    }
}

pub struct RealizeRequest<'a> {
    pub selector: &'a str,
    pub representation: &'a str,
    pub family: Option<Family>,
    pub plateau: PlateauParams,
    pub out: &'a Path,
    pub ply: bool,
    pub mode: Execution,
}

pub fn realize(src: &GroupSource, req: &RealizeRequest) -> Result<Vec<PathBuf>, Failure> {
    let class = src.resolve(req.selector)?;
    let name = class.name();
    let rep = src.representation(req.representation)?;
    if wythoff_dimension(&rep, &class.cgroup)? == 0 {
        return Err(Failure::Refused(format!(
            "{name} has a zero-dimensional Wythoff space under {}; the Wythoff construction gives no realization",
            rep.name()
        )));
    }
    let base = wythoff_space(&rep, &class.cgroup)?.default_base_point().ok_or(Error::EmptyWythoffSpace)?;
    let poly = build_polyhedron(&class.cgroup);
    let skel = build_skeleton(&poly, &rep, &base)?;
    let family = match req.family {
        Some(f) => f,
        None => geomesh::classify_family_with(&skel, req.mode).family,
    };
    let opts = RealizeOptions { plateau: req.plateau.clone(), mode: req.mode, ..RealizeOptions::default() };
    let rp = geomesh::realize(&skel, family, &opts).map_err(|e| match e {
        Error::Invalid(_)
        | Error::NonCoplanarFacet(_)
        | Error::NoSkewFacet
        | Error::AntipodalEdge(_)
        | Error::Domain(_) => {
            Failure::Refused(format!("{name} under {}: {e}", rep.name()))
        }
        e => Failure::Other(e.into()),
    })?;

    let stem = format!("{}_{}_{}", class.slug(), rep.name(), family.slug());
    let meta = MeshMetadata::new(&rp, &name);
    let mut obj = Vec::new();
    geomesh::write_obj(&rp, &mut obj)?;
    let mut written = vec![
        write(req.out, &format!("{stem}.skeleton.json"), &(serde_json::to_string_pretty(&skel.to_json(&name))? + "\n"))?,
        write(req.out, &format!("{stem}.obj"), std::str::from_utf8(&obj).expect("ASCII"))?,
        write(req.out, &format!("{stem}.meta.json"), &(serde_json::to_string_pretty(&meta)? + "\n"))?,
    ];
    if req.ply {
        let mut ply = Vec::new();
        geomesh::write_ply(&rp, &mut ply)?;
        written.push(write(req.out, &format!("{stem}.ply"), std::str::from_utf8(&ply).expect("ASCII"))?);
    }

    let (v, e, f) = skel.counts();
    println!("{name} under {}: {} realization, v={v} e={e} f={f}", rep.name(), family_name(family));
    if let Some(s) = &rp.plateau {
        println!(
            "Plateau: {} sweeps, area {:.6} -> {:.6}, last move {:.2e}",
            s.iterations, s.initial_area, s.final_area, s.final_displacement
        );
    }
    for p in &written {
        println!("wrote {}", p.display());
    }
    Ok(written)
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Spherical => "spherical",
        Family::Convex => "convex",
        Family::Star => "star",
        Family::Skew => "skew",
    }
}
