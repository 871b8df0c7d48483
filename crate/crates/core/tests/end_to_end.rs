use rand::Rng;
use slice_series::algebra::algebra_constants;
use slice_series::expansion::{coefficients, ContourOptions, ExpandOptions, Kind, Method};
use slice_series::geometry::{sigma, tau};
use slice_series::sampling::{self, rng_for};
use slice_series::series::{PowerSeries, SphericalSeries};
use slice_series::{AlgebraSpec, ConePoint, Exec, SliceFunction};

// A stem polynomial is reproduced by either expansion around any center, in
// every supported algebra, and both series report a finite tail.
#[test]
fn polynomial_expansions_reproduce_the_function() {
    let specs = [AlgebraSpec::quaternions(), AlgebraSpec::octonions(), AlgebraSpec::clifford(2).unwrap(), AlgebraSpec::clifford(4).unwrap()];
    for (k, spec) in specs.into_iter().enumerate() {
        let c_upper = algebra_constants(spec, 200, 1, Exec::Sequential).c_upper;
        for i in 0..12 {
            let mut rng = rng_for(k as u64, i);
            let degree = rng.random_range(1..=7);
            let f = sampling::stem_polynomial(spec, &mut rng, degree, 1.0);
            let y = ConePoint::new(rng.random_range(-1.0..1.0), rng.random_range(0.3..1.2), sampling::unit_imaginary(spec, &mut rng)).unwrap();
            let x = sampling::cone_point(spec, &mut rng, 1.0);
            let opts = ExpandOptions { radius: 0.8, contour: ContourOptions::default() };
            let fx = f.eval(&x);
            let scale = fx.norm().max(1.0) * (1.0 + sigma(&x, &y)).powi(degree as i32);
            for method in Method::ALL {
                let a = coefficients(&f, &y, degree, Kind::Power, method, &opts).unwrap();
                let v = PowerSeries::new(y.clone(), a).unwrap().eval(&x, c_upper);
                assert!((&v.value - &fx).norm() < 1e-9 * scale, "power {method:?} in {spec:?}");
                assert!(v.tail_bound.is_finite());

                let s = coefficients(&f, &y, degree, Kind::Spherical, method, &opts).unwrap();
                let v = SphericalSeries::new(y.clone(), s).unwrap().eval(&x, c_upper);
                let scale = scale.max(fx.norm().max(1.0) * (1.0 + tau(&x, &y)).powi(degree as i32));
                assert!((&v.value - &fx).norm() < 1e-9 * scale, "spherical {method:?} in {spec:?}");
            }
        }
    }
}
