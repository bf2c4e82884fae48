use std::collections::HashSet;

use polychora_core::export::MeshJson;
use polychora_core::game::{default_eat_radius, GameConfig, GameState};
use polychora_core::mesh::{project_mesh, tessellate};
use polychora_core::polytope::{Polychoron, PolytopeName};
use polychora_core::trajectory::{nn_tour, plan_samples, tour_waypoints};
use polychora_core::{Polychoron32, UnitQuat32};

#[test]
fn tours_win_in_f32() {
    for name in [PolytopeName::Cell5, PolytopeName::Cell24, PolytopeName::Cell120] {
        let p: Polychoron32 = Polychoron::build(name);
        assert!(p.validate().is_ok(), "{name}");
        let wp = tour_waypoints(&p, &nn_tour(&p, &UnitQuat32::identity()));
        let step = default_eat_radius(name) as f32 / 2.0;
        let mut g = GameState::from_polychoron(GameConfig::new(name), &p).unwrap();
        for s in plan_samples(&UnitQuat32::identity(), &wp, step).unwrap() {
            g.step(s.q, s.t).unwrap();
        }
        assert!(g.is_won(), "{name}");
    }
}

#[test]
fn f32_mesh_matches_f64() {
    let p32: Polychoron32 = Polychoron::build(PolytopeName::Cell8);
    let p64: Polychoron<f64> = Polychoron::build(PolytopeName::Cell8);
    let a = project_mesh(&tessellate(&p32, 1).unwrap(), &UnitQuat32::identity(), &HashSet::new());
    let b = project_mesh(&tessellate(&p64, 1).unwrap(), &Default::default(), &HashSet::new());
    let (ja, jb) = (MeshJson::from_projected(&a, 0.5), MeshJson::from_projected(&b, 0.5));
    assert_eq!(ja.triangles, jb.triangles);
    assert_eq!(ja.cell_ids, jb.cell_ids);
    for (u, v) in ja.vertices3.iter().zip(&jb.vertices3) {
        for k in 0..3 {
            assert!((u[k] - v[k]).abs() < 1e-4);
        }
    }
}
