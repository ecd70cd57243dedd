use num_bigint::BigUint;

/// `log₂` of the worst-case magnitude `2·v^{16/3} / (6x)^{1/3}` reached by the
/// free-variable pass. Floating point, for reporting only.
pub fn overflow_bound_log2(x: u128, v: u64) -> f64 {
    1.0 + (16.0 / 3.0) * (v as f64).log2() - (6.0 * x as f64).log2() / 3.0
}

/// Whether the free-variable pass is safe in 128-bit signed arithmetic, i.e.
/// `2·v^{16/3} / (6x)^{1/3} < 2^127`.
///
/// Cubing both sides gives `4·v^16 < 3·x·2^381`, which is decided exactly.
pub fn overflow_guard(x: u128, v: u64) -> bool {
    let lhs = BigUint::from(v).pow(16) * 4u32;
    let rhs = (BigUint::from(x) * 3u32) << 381;
    lhs < rhs
}
