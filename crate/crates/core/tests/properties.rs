//! Property tests over randomly generated amplitudes, wavevectors and maps.

use proptest::prelude::*;

use rmpkit_core::{
    c64, classify_mode, current_from_g, dot, dual_field, field_from_four_potential, field_from_rmp,
    g_from_theta, gauge_shift_four, kg_residual, residual_augment,
    residual_augment_second_difference, rmp_reduce, theta_from_c, vacuum_residual, CPotential,
    ColumnVec16, FieldTensor, FourPotential, FourVector, LorentzMap, ModeKind, WaveVector, C64,
    MODE_TOL,
};

fn component() -> impl Strategy<Value = f64> {
    prop_oneof![(-4.0..-0.5f64), (0.5..4.0f64)]
}

fn complex_unit() -> impl Strategy<Value = C64> {
    ((-1.0..1.0f64), (-1.0..1.0f64)).prop_map(|(re, im)| c64(re, im))
}

prop_compose! {
    /// Regular wavevector: real components, or an imaginary temporal part
    /// bounded away from the null cone.
    fn wavevector()(
        spatial in [component(), component(), component()],
        temporal in component(),
        imaginary_temporal in any::<bool>(),
    ) -> WaveVector {
        let spatial_sq: f64 = spatial.iter().map(|x| x * x).sum();
        let temporal = if imaginary_temporal {
            // keep |n·n| away from zero under the all-plus form
            let t = if (spatial_sq - temporal * temporal).abs() < 0.2 {
                temporal * 1.5 + 0.7
            } else {
                temporal
            };
            c64(0.0, t)
        } else {
            c64(temporal, 0.0)
        };
        WaveVector::new(FourVector::new([
            c64(spatial[0], 0.0),
            c64(spatial[1], 0.0),
            c64(spatial[2], 0.0),
            temporal,
        ]))
    }
}

prop_compose! {
    fn amplitude3()(a in [complex_unit(), complex_unit(), complex_unit()]) -> [C64; 3] {
        a
    }
}

prop_compose! {
    fn amplitude4()(a in [complex_unit(), complex_unit(), complex_unit(), complex_unit()]) -> [C64; 4] {
        a
    }
}

prop_compose! {
    fn lorentz_map()(
        boost_axis in 1usize..=3,
        rapidity in -2.0..2.0f64,
        rot_axis in 1usize..=3,
        angle in -3.0..3.0f64,
    ) -> LorentzMap {
        LorentzMap::boost(boost_axis, rapidity).compose(&LorentzMap::rotation(rot_axis, angle))
    }
}

prop_compose! {
    fn skew_tensor()(n in wavevector(), entries in proptest::array::uniform6(complex_unit())) -> FieldTensor {
        let mut f = FieldTensor::zero(n);
        let pairs = [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (z, (a, b)) in entries.into_iter().zip(pairs) {
            f.f[a][b] = z;
            f.f[b][a] = -z;
        }
        f
    }
}

proptest! {
    #[test]
    fn dot_is_invariant_under_orthogonal_maps(
        map in lorentz_map(),
        u in amplitude4(),
        v in amplitude4(),
    ) {
        let u = FourVector::new(u);
        let v = FourVector::new(v);
        let before = dot(&u, &v);
        let after = dot(&map.apply(&u), &map.apply(&v));
        prop_assert!((before - after).norm() < 1e-11 * (1.0 + before.norm()));
    }

    #[test]
    fn reduction_preserves_the_field(phi in amplitude4(), n in wavevector()) {
        prop_assume!(n.components()[3].norm() > 0.4);
        let p = FourPotential::new(phi, n);
        let f_four = field_from_four_potential(&p);
        let f_three = field_from_rmp(&rmp_reduce(&p).unwrap());
        for a in 0..4 {
            for b in 0..4 {
                prop_assert!(
                    (f_four.f[a][b] - f_three.f[a][b]).norm()
                        < 1e-11 * (1.0 + f_four.norm())
                );
            }
        }
    }

    #[test]
    fn gauge_shift_never_moves_the_field(
        phi in amplitude4(),
        n in wavevector(),
        psi0 in complex_unit(),
    ) {
        let p = FourPotential::new(phi, n);
        let f0 = field_from_four_potential(&p);
        let f1 = field_from_four_potential(&gauge_shift_four(&p, psi0));
        for a in 0..4 {
            for b in 0..4 {
                prop_assert!((f0.f[a][b] - f1.f[a][b]).norm() < 1e-11 * (1.0 + f0.norm()));
            }
        }
    }

    #[test]
    fn massive_chain_stays_conserved(c_amp in amplitude3(), n in wavevector(), kappa in 0.0..4.0f64) {
        let c = CPotential::new(c_amp, n, kappa);
        let theta = theta_from_c(&c);
        prop_assert!(theta.divergence().norm() < 1e-11 * (1.0 + theta.norm() * n.norm()));
        let g = g_from_theta(&theta);
        prop_assert!(g.symmetry_defect() < 1e-11 * (1.0 + g.norm()));
        prop_assert!(
            g.double_contraction().norm() < 1e-10 * (1.0 + g.norm() * n.norm() * n.norm())
        );
        let j = current_from_g(&g);
        prop_assert!(j.divergence().norm() < 1e-10 * (1.0 + j.norm() * n.norm()));
    }

    #[test]
    fn kg_residual_scales_with_the_shell_offset(c_amp in amplitude3(), n in wavevector(), kappa in 0.0..4.0f64) {
        let c = CPotential::new(c_amp, n, kappa);
        let offset = n.n_dot_n() + c64(kappa * kappa, 0.0);
        for (k, r) in kg_residual(&c).iter().enumerate() {
            prop_assert!((r - offset * c.c[k]).norm() < 1e-12 * (1.0 + offset.norm()));
        }
    }

    #[test]
    fn dual_is_an_involution_on_skew_tensors(f in skew_tensor()) {
        let back = dual_field(&dual_field(&f));
        for a in 0..4 {
            for b in 0..4 {
                prop_assert!((back.f[a][b] - f.f[a][b]).norm() < 1e-12 * (1.0 + f.norm()));
            }
        }
    }

    #[test]
    fn augment_routes_always_agree(n in wavevector(), entries in proptest::array::uniform16(complex_unit())) {
        let h = ColumnVec16(entries);
        let via_contraction = residual_augment(&h, &n);
        let via_differences = residual_augment_second_difference(&h, &n);
        for i in 0..6 {
            prop_assert!((via_contraction[i] - via_differences[i]).norm() < 1e-11);
        }
    }

    #[test]
    fn classification_never_contradicts_the_residual(a0 in amplitude3(), n in wavevector()) {
        let class = classify_mode(&a0, &n);
        let residual = vacuum_residual(&a0, &n);
        let r_norm = residual.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let a_norm = a0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let relative = r_norm / (a_norm * n.norm() * n.norm()).max(1e-300);
        match class.kind {
            ModeKind::Transverse | ModeKind::Longitudinal => {
                prop_assert!(relative <= MODE_TOL)
            }
            ModeKind::NonSolution => prop_assert!(relative > MODE_TOL),
        }
    }
}
