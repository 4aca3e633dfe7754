//! `check`: runs the invariant suites and reports pass/fail as JSON.

use std::path::Path;

use anyhow::Result;
use polyreal_core::geomesh::classify_family_with;
use polyreal_core::polytope::{build_polyhedron, flag_transitive, verify_axioms_with};
use polyreal_core::wythoff::{build_skeleton, builtin_representation, wythoff_dimension, wythoff_space};
use polyreal_core::{h3, Execution, Mat3};
use serde::Serialize;

use crate::source::{self, broken_involutions, GroupSource};

#[derive(Debug, Serialize)]
pub struct CheckItem {
    pub check: String,
    pub target: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub group: String,
    pub passed: bool,
    pub passed_count: usize,
    pub failed_count: usize,
    pub checks: Vec<CheckItem>,
}

#[derive(Default)]
struct Log(Vec<CheckItem>);

impl Log {
    fn record(&mut self, check: &str, target: &str, passed: bool, detail: Option<String>) -> bool {
        self.0.push(CheckItem { check: check.into(), target: target.into(), passed, detail });
        passed
    }

    fn finish(self, group: &str) -> CheckReport {
        let failed_count = self.0.iter().filter(|c| !c.passed).count();
        CheckReport {
            group: group.into(),
            passed: failed_count == 0,
            passed_count: self.0.len() - failed_count,
            failed_count,
            checks: self.0,
        }
    }
}

/// Involution and orthogonality of each generator image.
fn relation_checks(log: &mut Log, target: &str, matrices: &[Mat3]) -> bool {
    let broken = broken_involutions(matrices);
    let ok_inv = log.record(
        "generators are involutions",
        target,
        broken.is_empty(),
        (!broken.is_empty()).then(|| format!("generator(s) {broken:?} do not square to the identity")),
    );
    let skew: Vec<usize> = (0..matrices.len()).filter(|&k| !matrices[k].is_orthogonal()).collect();
    let ok_orth = log.record(
        "generators are orthogonal",
        target,
        skew.is_empty(),
        (!skew.is_empty()).then(|| format!("generator(s) {skew:?} are not orthogonal")),
    );
    ok_inv && ok_orth
}

pub fn check(group_arg: &str, selector: Option<&str>, mode: Execution) -> Result<CheckReport> {
    let mut log = Log::default();
    let builtin = group_arg == "h3";
    let relations_ok = if builtin {
        let mut ok = true;
        for name in ["phi1", "phi2"] {
            ok &= relation_checks(&mut log, name, builtin_representation(name)?.generator_images());
        }
        ok
    } else {
        relation_checks(&mut log, "native", &source::read_matrices(Path::new(group_arg))?)
    };
    if !relations_ok {
        return Ok(log.finish(group_arg));
    }

    let src = match source::load(group_arg, mode) {
        Ok(src) => src,
        Err(e) => {
            log.record("group closes", group_arg, false, Some(format!("{e:#}")));
            return Ok(log.finish(group_arg));
        }
    };
    log.record("group closes", group_arg, true, Some(format!("order {}", src.group.order())));
    if builtin {
        enumeration_matches_reference(&mut log, &src);
    }

    let targets = match selector {
        Some(sel) => vec![src.resolve(sel)?],
        None => src.classes.iter().collect(),
    };
    let mut dims_checked = 0;
    let mut dims_agreeing = 0;
    for class in targets {
        let name = class.name();
        let poly = build_polyhedron(&class.cgroup);
        let report = verify_axioms_with(poly.poset(), mode);
        log.record("polytope axioms P1-P4", &name, report.all_pass(), (!report.all_pass()).then(|| report.failures.join("; ")));
        let ft = flag_transitive(&poly);
        log.record(
            "flag transitivity",
            &name,
            ft.is_regular(),
            Some(format!("{} flags, {} orbit(s), group order {}", ft.flags, ft.orbits, ft.group_order)),
        );
        log.record("generators act as automorphisms", &name, poly.generators_preserve_order(), None);

        for rep_name in src.representation_names() {
            let rep = src.representation(&rep_name)?;
            let target = format!("{name} {rep_name}");
            let dim = wythoff_dimension(&rep, &class.cgroup)?;
            let space = wythoff_space(&rep, &class.cgroup)?;
            dims_checked += 1;
            let agree = dim == space.dimension();
            dims_agreeing += usize::from(agree);
            log.record(
                "trace formula matches fixed space",
                &target,
                agree,
                Some(format!("trace {dim}, fixed space {}", space.dimension())),
            );
            if builtin {
                let expected = h3::KNOWN_POLYHEDRA
                    .iter()
                    .find(|k| (k.p, k.q) == class.cgroup.schlafli() && k.label == class.label)
                    .map(|k| k.wythoff_dims[if rep_name == "phi1" { 0 } else { 1 }]);
                log.record(
                    "Wythoff dimension matches reference",
                    &target,
                    expected == Some(dim),
                    Some(format!("expected {expected:?}, got {dim}")),
                );
            }
            let Some(base) = space.default_base_point() else { continue };
            let skel = match build_skeleton(&poly, &rep, &base) {
                Ok(s) => s,
                Err(e) => {
                    log.record("skeleton builds", &target, false, Some(e.to_string()));
                    continue;
                }
            };
            let sym = skel.check_symmetry();
            log.record("realization commutes with generators", &target, sym.is_ok(), sym.err());
            let stab = skel.check_stabilizers();
            log.record("base faces fixed by their stabilizers", &target, stab.is_ok(), stab.err());
            log.record("vertex norms equal", &target, skel.vertex_norms_equal(), None);
            log.record("edge lengths equal", &target, skel.edge_lengths_equal(), None);
            let c = classify_family_with(&skel, mode);
            log.record("classified", &target, true, Some(c.family.slug().to_string()));
        }
    }
    log.record(
        "Wythoff dimension cross-check",
        group_arg,
        dims_agreeing == dims_checked,
        Some(format!("{dims_agreeing}/{dims_checked} agree")),
    );
    Ok(log.finish(group_arg))
}

fn enumeration_matches_reference(log: &mut Log, src: &GroupSource) {
    let mut found: Vec<((usize, usize), Option<char>)> =
        src.classes.iter().map(|c| (c.cgroup.schlafli(), c.label)).collect();
    let mut expected: Vec<((usize, usize), Option<char>)> =
        h3::KNOWN_POLYHEDRA.iter().map(|k| ((k.p, k.q), k.label)).collect();
    found.sort();
    expected.sort();
    log.record(
        "enumeration matches reference listing",
        &src.name,
        found == expected,
        Some(format!("{} classes", found.len())),
    );
}
