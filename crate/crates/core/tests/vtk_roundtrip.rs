//! Field files read back by a small standalone legacy VTK parser.

mod common;

use std::collections::HashMap;

use common::{concrete, mesh_path};
use nhpd::correction::{run_correction, CorrectionSettings};
use nhpd::damage::assign_critical_stretches;
use nhpd::io::{write_fields, PointFields};
use nhpd::mesh::read_msh;
use nhpd::solver::{Dof, LoadProgram, Schedule, Solver};
use nhpd::{Model, ModelConfig};

#[derive(Default)]
struct Parsed {
    title: String,
    points: Vec<[f64; 3]>,
    vertices: usize,
    vectors: HashMap<String, Vec<[f64; 3]>>,
    scalars: HashMap<String, Vec<f64>>,
}

fn parse(text: &str) -> Parsed {
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# vtk DataFile"));
    let mut out = Parsed { title: lines.next().unwrap().to_string(), ..Default::default() };
    assert_eq!(lines.next(), Some("ASCII"));
    assert_eq!(lines.next(), Some("DATASET POLYDATA"));
    let nums = |line: &str| -> Vec<f64> { line.split_whitespace().map(|t| t.parse().unwrap()).collect() };
    while let Some(line) = lines.next() {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.first().copied() {
            Some("POINTS") => {
                let n: usize = words[1].parse().unwrap();
                out.points = (0..n).map(|_| nums(lines.next().unwrap()).try_into().unwrap()).collect();
            }
            Some("VERTICES") => {
                out.vertices = words[1].parse().unwrap();
                for i in 0..out.vertices {
                    assert_eq!(nums(lines.next().unwrap()), vec![1.0, i as f64]);
                }
            }
            Some("POINT_DATA") => {}
            Some("VECTORS") => {
                let v = (0..out.points.len()).map(|_| nums(lines.next().unwrap()).try_into().unwrap()).collect();
                out.vectors.insert(words[1].to_string(), v);
            }
            Some("SCALARS") => {
                assert_eq!(lines.next(), Some("LOOKUP_TABLE default"));
                let v = (0..out.points.len()).map(|_| nums(lines.next().unwrap())[0]).collect();
                out.scalars.insert(words[1].to_string(), v);
            }
            other => panic!("unexpected line {other:?}"),
        }
    }
    out
}

#[test]
fn damaged_state_round_trips_exactly() {
    let mesh = read_msh(mesh_path("disk_coarse.msh")).unwrap();
    let mut model = Model::from_mesh(&mesh, &ModelConfig::new(concrete(), 3.0), &[]).unwrap();
    run_correction(&mut model, &CorrectionSettings::default()).unwrap();
    assign_critical_stretches(&mut model).unwrap();
    let dofs = |m: &Model, g: &str, d: Dof| -> Vec<usize> { m.group(g).unwrap().iter().map(|&p| d.of(p)).collect() };
    let program = LoadProgram::new(1)
        .prescribe(dofs(&model, "top", Dof::Uy), Schedule::Fixed { value: -1.5e-4 })
        .prescribe(dofs(&model, "bottom", Dof::Uy), Schedule::Fixed { value: 0.0 })
        .prescribe(dofs(&model, "top", Dof::Ux), Schedule::Fixed { value: 0.0 })
        .prescribe(dofs(&model, "bottom", Dof::Ux), Schedule::Fixed { value: 0.0 })
        .monitor(dofs(&model, "top", Dof::Uy));
    let mut solver = Solver::new(&mut model, program).unwrap();
    solver.step(1).unwrap();
    let fields = PointFields::capture(solver.model(), solver.displacements());
    assert!(fields.damage.iter().any(|&d| d > 0.0), "the step should break bonds");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("step.vtk");
    write_fields(&path, &fields, "lambda = 3, tensile_strength = 3.81e6, correction = energy").unwrap();
    let parsed = parse(&std::fs::read_to_string(&path).unwrap());

    assert!(parsed.title.contains("lambda = 3") && parsed.title.contains("correction = energy"));
    assert_eq!(parsed.vertices, fields.position.len());
    for (p, q) in parsed.points.iter().zip(&fields.position) {
        assert_eq!([p[0], p[1], p[2]], [q[0], q[1], 0.0]);
    }
    for (p, q) in parsed.vectors["displacement"].iter().zip(&fields.displacement) {
        assert_eq!([p[0], p[1]], *q);
    }
    assert_eq!(parsed.scalars["rotation"], fields.rotation);
    assert_eq!(parsed.scalars["damage"], fields.damage);
    assert_eq!(parsed.scalars["volume"], fields.volume);
    assert_eq!(parsed.scalars["horizon"], fields.horizon);
}

#[test]
fn unwritable_path_is_an_io_error() {
    let fields = PointFields {
        position: vec![[0.0, 0.0]],
        displacement: vec![[0.0, 0.0]],
        rotation: vec![0.0],
        damage: vec![0.0],
        volume: vec![1.0],
        horizon: vec![1.0],
    };
    let err = write_fields(std::path::Path::new("/nonexistent/dir/f.vtk"), &fields, "t").unwrap_err();
    assert_eq!(err.category(), nhpd::ErrorCategory::Io);
}
