use polyreal_core::cgroups::Rejection;
use polyreal_core::h3::{self, KNOWN_POLYHEDRA};
use polyreal_core::polytope::{build_polyhedron, flag_transitive};
use polyreal_core::wythoff::{builtin_representation, build_skeleton, wythoff_dimension, wythoff_space};

#[test]
fn enumeration_matches_known_list() {
    let classes = h3::classes();
    assert_eq!(classes.len(), 15);
    for (c, k) in classes.iter().zip(KNOWN_POLYHEDRA.iter()) {
        assert_eq!(c.cgroup.schlafli(), (k.p, k.q), "{}", c.name());
        assert_eq!(c.label, k.label, "{}", c.name());
    }
    let _ = Rejection::StringFails;
}

#[test]
fn dims_face_counts_and_skeletons() {
    let reps = ["phi1", "phi2"].map(|r| builtin_representation(r).unwrap());
    for (c, k) in h3::classes().iter().zip(KNOWN_POLYHEDRA.iter()) {
        let poly = build_polyhedron(&c.cgroup);
        assert!(poly.verify_axioms().all_pass(), "{}", c.name());
        assert!(flag_transitive(&poly).is_regular());
        for (rep, &want) in reps.iter().zip(&k.wythoff_dims) {
            let d = wythoff_dimension(rep, &c.cgroup).unwrap();
            let space = wythoff_space(rep, &c.cgroup).unwrap();
            assert_eq!(d, want, "{} {}", c.name(), rep.name());
            assert_eq!(space.dimension(), d);
            if d > 0 {
                let sk = build_skeleton(&poly, rep, &space.default_base_point().unwrap()).unwrap();
                println!("{} {} {:?}", c.name(), rep.name(), sk.counts());
                sk.check_symmetry().unwrap();
                sk.check_stabilizers().unwrap();
                assert!(sk.vertex_norms_equal() && sk.edge_lengths_equal());
            }
        }
    }
}
