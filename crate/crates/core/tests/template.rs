mod common;

use std::collections::BTreeSet;

use knotplate::catalog::fixtures;
use knotplate::diagram::Diagram;
use knotplate::template::{build_mesh, layout, Anchor, Mesh, MeshParams, PolygonClass, TemplateComplex, TemplateError};
use knotplate::Analysis;

fn complex(d: &Diagram) -> Result<TemplateComplex, TemplateError> {
    TemplateComplex::from_analysis(&Analysis::of(d).unwrap())
}

fn mesh(d: &Diagram) -> (Analysis, TemplateComplex, Mesh) {
    let a = Analysis::of(d).unwrap();
    let tc = TemplateComplex::from_analysis(&a).unwrap();
    let l = layout(&a.medial).unwrap();
    let m = build_mesh(&a.medial, &tc, &l, &MeshParams::default()).unwrap();
    (a, tc, m)
}

fn check_formulas(name: &str, d: &Diagram) {
    let c = d.crossing_count() as i64;
    let (e, t) = common::exterior_and_bigons(d);
    let (e, t) = (e as i64, t as i64);
    let k = complex(d).unwrap().counts();
    assert_eq!(k.vertices as i64, 14 * c + 2 - 2 * t + 2 * e, "{name}: V");
    assert_eq!(k.edges as i64, 25 * c + 1 - 3 * t + 3 * e, "{name}: E");
    assert_eq!(k.polygons as i64, 11 * c - t + e, "{name}: F");
    assert_eq!(k.euler_characteristic, 1, "{name}");
    assert_eq!(k.side_incidences as i64, 60 * c - 8 * t + 6 * e, "{name}: sides");
    assert_eq!(
        k.edge_incidences as i64,
        64 * c - 8 * t + 6 * e,
        "{name}: edge incidences"
    );
    assert_eq!(k.four_sided as i64, 9 * c - t + e, "{name}: quadrilaterals");
}

#[test]
fn counting_formulas_on_fixtures() {
    for f in fixtures() {
        check_formulas(f.name, &f.diagram());
    }
}

#[test]
fn counting_formulas_on_random_diagrams() {
    let mut checked = 0;
    for (w, d) in common::random_diagrams(300, 11) {
        if common::lids_are_discs(&d) {
            check_formulas(&format!("{w:?}"), &d);
            checked += 1;
        }
    }
    assert!(checked > 100, "only {checked} admissible diagrams");
}

#[test]
fn split_lids_exactly_when_a_component_misses_a_side() {
    for (w, d) in common::random_diagrams(300, 12) {
        let ok = complex(&d).is_ok();
        assert_eq!(ok, common::lids_are_discs(&d), "{w:?}");
    }
}

#[test]
fn every_edge_bounds_two_polygons() {
    for (w, d) in common::random_diagrams(100, 13) {
        let Ok(tc) = complex(&d) else { continue };
        let mut uses = vec![0; tc.edges.len()];
        for p in &tc.polygons {
            assert_eq!(p.vertices.len(), p.edges.len());
            for (i, &e) in p.edges.iter().enumerate() {
                uses[e] += 1;
                let ends = tc.edges[e].ends;
                let (a, b) = (p.vertices[i], p.vertices[(i + 1) % p.vertices.len()]);
                assert!(ends == [a, b] || ends == [b, a], "{w:?}: edge {e} misplaced");
            }
        }
        assert!(uses.iter().all(|&u| u >= 2), "{w:?}: {uses:?}");
    }
}

#[test]
fn mesh_geometry() {
    for f in fixtures() {
        let (a, tc, m) = mesh(&f.diagram());
        let p = MeshParams::default();
        assert_eq!(m.face_count(), tc.polygons.len());
        for (i, v) in tc.vertices.iter().enumerate() {
            let x = m.vertices[i];
            assert_eq!(x[2], v.level.z(p.height));
            if let Anchor::Medial { vertex } = v.anchor {
                if vertex >= a.medial.circle_vertex(0) {
                    assert!((x[0].hypot(x[1]) - p.ring_radius).abs() < 1e-9, "{}", f.name);
                }
            }
        }
        for face in &m.faces {
            let zs: BTreeSet<i64> = face.vertices.iter().map(|&v| m.vertices[v][2] as i64).collect();
            match face.class {
                PolygonClass::LidFacet => assert_eq!(zs.len(), 1, "{}", f.name),
                PolygonClass::SaddleSquare => assert_eq!(zs, BTreeSet::from([0]), "{}", f.name),
                PolygonClass::WallRing => {
                    assert_eq!(zs.len(), 2);
                    let xy: BTreeSet<[i64; 2]> = face
                        .vertices
                        .iter()
                        .map(|&v| [(m.vertices[v][0] * 1e6) as i64, (m.vertices[v][1] * 1e6) as i64])
                        .collect();
                    assert_eq!(xy.len(), 2, "{}: ring walls are vertical", f.name);
                }
                _ => {}
            }
        }
    }
}

#[test]
fn saddle_points_at_the_saddle_radius() {
    let (a, tc, m) = mesh(&knotplate::catalog::fixture("figure-eight").unwrap().diagram());
    let l = layout(&a.medial).unwrap();
    let big_r = MeshParams::default().ring_radius;
    let radii: Vec<f64> = tc
        .vertices
        .iter()
        .zip(&m.vertices)
        .filter_map(|(v, x)| match v.anchor {
            Anchor::Saddle { crossing, .. } => {
                let o = l.positions[crossing];
                Some((x[0] - o[0] * big_r).hypot(x[1] - o[1] * big_r))
            }
            Anchor::Medial { .. } => None,
        })
        .collect();
    assert_eq!(radii.len(), 3 * 4 * 4);
    assert!(radii.iter().all(|r| (r - radii[0]).abs() < 1e-9), "{radii:?}");
}

/// Point sets of the flaps at each crossing, rounded so they can be compared.
fn flap_shapes(m: &Mesh, tc: &TemplateComplex) -> Vec<BTreeSet<Vec<[i64; 3]>>> {
    let mut out = vec![BTreeSet::new(); tc.crossings];
    for (p, face) in tc.polygons.iter().zip(&m.faces) {
        if p.class != PolygonClass::SaddleFlap {
            continue;
        }
        let Anchor::Saddle { crossing, .. } = tc.vertices[p.vertices[0]].anchor else {
            unreachable!()
        };
        let mut pts: Vec<[i64; 3]> = face
            .vertices
            .iter()
            .map(|&v| m.vertices[v].map(|x| (x * 1e6).round() as i64))
            .collect();
        pts.sort_unstable();
        out[crossing].insert(pts);
    }
    out
}

#[test]
fn flipping_a_crossing_only_moves_its_own_flaps() {
    for f in fixtures() {
        let d = f.diagram();
        let (_, tc, m) = mesh(&d);
        let before = flap_shapes(&m, &tc);
        for i in 0..d.crossing_count() {
            let flipped = d.flip_crossing(i).unwrap();
            if !common::lids_are_discs(&flipped) {
                continue;
            }
            let (_, tc2, m2) = mesh(&flipped);
            let after = flap_shapes(&m2, &tc2);
            for c in 0..d.crossing_count() {
                assert_eq!(before[c] == after[c], c != i, "{}: flip {i}, crossing {c}", f.name);
            }
        }
    }
}
