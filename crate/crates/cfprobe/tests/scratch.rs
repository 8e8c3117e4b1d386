use cfprobe::evolution::*;
use cfprobe::states::*;

#[test]
fn scratch_numbers() {
    let b = BathParams::new(1.0, 1.0).unwrap();
    let b0 = BathParams::new(1.0, 0.0).unwrap();
    let kmax1 = find_kmax_fock(10, &b, (0.0, 12.0)).unwrap();
    let kmax0 = find_kmax_fock(10, &b0, (0.0, 12.0)).unwrap();
    println!("kmax(m=10, nbar=1) = {kmax1}");
    println!("kmax(m=10, nbar=0) = {kmax0}");
    println!("G_10(kmax1) = {}", cf_fock(10, kmax1));
    println!("G_10(6.0)   = {}", cf_fock(10, 6.0));
    println!("L_10(36) = {}", cfprobe::specfun::laguerre(10, 36.0).unwrap());
    println!("ratio(m=10, nbar=1) = {}", decay_rate_ratio(10, &b).unwrap());
    println!("ratio(m=10, nbar=0) = {}", decay_rate_ratio(10, &b0).unwrap());
    println!("ratio at k=1 = {}", decay_rate_ratio_at(10, &b, 1.0).unwrap());
    println!("kmax_squeezed(1.32) = {}", kmax_squeezed(1.32).unwrap());
    let (tg, tp, hr) = halflife_comparison(10, &b, kmax1).unwrap();
    println!("halflife g = {tg}, p = {tp}, ratio = {hr}");
    // fig2 ordering sweep
    let k = kmax1;
    let g0 = cf_fock(10, k);
    let cfg = cfprobe::oracle::IntegratorConfig::default_for_dim(64);
    let mut p = vec![0.0; 64];
    p[10] = 1.0;
    let mut worst_margin = f64::INFINITY;
    let mut t = 0.0f64;
    while t < 0.5 - 1e-12 {
        let p_next = cfprobe::oracle::evolve_occupations(&p, &b, 0.01, &cfg).unwrap();
        t += 0.01;
        p = p_next;
        let g = cf_fock_evolved(10, &b, t, k).unwrap() / g0;
        let n_norm = mean_excitation(10, &b, t).unwrap() / 10.0;
        let m1 = p[10] - g;
        let m2 = n_norm - p[10];
        worst_margin = worst_margin.min(m1.min(m2));
        if t < 0.06 || (p[10] - g) < 0.02 {
            println!("t={t:.2}: g={g:.5} p10={:.5} n={n_norm:.5}", p[10]);
        }
    }
    println!("worst fig2 ordering margin on (0,0.5]: {worst_margin}");
    // fig3 check: where does g < s fail?
    let r = 1.32f64;
    let ks = kmax_squeezed(r).unwrap();
    let s0 = (-2.0 * r).exp() - 1.0;
    let g0 = cf_sv_evolved_min_phase(r, &b, 0.0, ks).unwrap();
    let mut first_fail = None;
    for i in 1..=100 {
        let t = 0.01 * i as f64;
        let g = cf_sv_evolved_min_phase(r, &b, t, ks).unwrap() / g0;
        let s = (variance_min_squeezed(r, &b, t).unwrap() - 1.0) / s0;
        let n_norm = mean_excitation_sv(r, &b, t) / r.sinh().powi(2);
        if g >= s && first_fail.is_none() {
            first_fail = Some(t);
        }
        assert!(g < n_norm, "g < n_norm fails at t={t}");
        if i % 20 == 0 || (g >= s && first_fail == Some(t)) {
            println!("fig3 t={t:.2}: g={g:.3e} s={s:.4} n={n_norm:.4}");
        }
    }
    println!("fig3 g<s first fails at t={first_fail:?}");
}

fn mean_excitation_sv(r: f64, b: &BathParams, t: f64) -> f64 {
    let u = (-2.0 * t).exp();
    r.sinh().powi(2) * u + b.nbar * (1.0 - u)
}
