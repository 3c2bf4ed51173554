use super::cone::ConedComplex;

/// Distance kept between perturbed values and the integers.
pub const PERTURBATION: f64 = 0.125;

/// Function values on every vertex of `Y`, none of them an integer.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedFunction {
    pub values: Vec<f64>,
}

impl PerturbedFunction {
    pub fn max_shift(&self, original: &[f64]) -> f64 {
        original
            .iter()
            .zip(&self.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Moves `x` to distance exactly `1/8` from the nearest integer when it
/// is closer than that, staying on its side. Integers move up.
pub fn perturb_value(x: f64) -> f64 {
    let n = x.round();
    if (x - n).abs() >= PERTURBATION {
        x
    } else if x >= n {
        n + PERTURBATION
    } else {
        n - PERTURBATION
    }
}

/// Perturbs base values and copies each center's value to its cone vertex.
pub fn perturb(y: &ConedComplex, base_values: &[f64]) -> PerturbedFunction {
    assert_eq!(base_values.len(), y.base_len, "one value per base vertex");
    let values = (0..y.y.len())
        .map(|v| perturb_value(base_values[y.base_of(v)]))
        .collect();
    PerturbedFunction { values }
}
