//! Little-endian u64 limb kernels for the plane-partition convolution.

use num_bigint::BigUint;

/// `acc += x * m`.
pub(super) fn mac(acc: &mut Vec<u64>, x: &BigUint, m: u64) {
    let digits = x.iter_u64_digits();
    let len = digits.len();
    if acc.len() < len + 1 {
        acc.resize(len + 1, 0);
    }
    let mut carry = 0u64;
    for (slot, limb) in acc.iter_mut().zip(digits) {
        let t = *slot as u128 + limb as u128 * m as u128 + carry as u128;
        *slot = t as u64;
        carry = (t >> 64) as u64;
    }
    let mut i = len;
    while carry != 0 {
        if i == acc.len() {
            acc.push(0);
        }
        let (s, overflow) = acc[i].overflowing_add(carry);
        acc[i] = s;
        carry = overflow as u64;
        i += 1;
    }
}

/// Divides in place by `d`, returning the remainder.
pub(super) fn div_small(acc: &mut [u64], d: u64) -> u64 {
    let mut rem = 0u128;
    for limb in acc.iter_mut().rev() {
        let cur = (rem << 64) | *limb as u128;
        *limb = (cur / d as u128) as u64;
        rem = cur % d as u128;
    }
    rem as u64
}

pub(super) fn to_biguint(limbs: &[u64]) -> BigUint {
    let mut halves = Vec::with_capacity(limbs.len() * 2);
    for &l in limbs {
        halves.push(l as u32);
        halves.push((l >> 32) as u32);
    }
    BigUint::new(halves)
}
