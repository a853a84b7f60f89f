//! Small integer helpers shared by the field and bound layers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn gcd_all(values: &[usize]) -> usize {
    values.iter().fold(0u64, |acc, &v| gcd(acc, v as u64)) as usize
}

pub fn lcm_all(values: &[usize]) -> usize {
    values.iter().fold(1u64, |acc, &v| lcm(acc, v as u64)) as usize
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Distinct prime factors of `n` by trial division. Intended for `n < 2^48`.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// Splits a prime power `q = p^e`, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        e += 1;
    }
    Some((p, e))
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// `(q^n - 1) / (q^m - 1)`, the orbit size of a subspace with best friend `F_{q^m}`.
pub fn orbit_size(q: u64, n: usize, m: usize) -> u64 {
    let top = checked_pow(q, n as u32).expect("field order overflow") - 1;
    let bottom = checked_pow(q, m as u32).expect("field order overflow") - 1;
    top / bottom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_are_sorted() {
        assert_eq!(divisors(24), vec![1, 2, 3, 4, 6, 8, 12, 24]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn factors_of_mersenne_numbers() {
        assert_eq!(prime_factors((1 << 24) - 1), vec![3, 5, 7, 13, 17, 241]);
        assert_eq!(prime_factors((1 << 31) - 1), vec![(1 << 31) - 1]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn lcm_and_gcd() {
        assert_eq!(lcm_all(&[2, 4, 1, 12, 3, 3, 3]), 12);
        assert_eq!(gcd_all(&[2, 4, 1, 12, 3, 3, 3]), 1);
        assert_eq!(gcd_all(&[4, 12, 8]), 4);
        assert_eq!(lcm(4, 3), 12);
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(2, 16, 2), 21845);
        assert_eq!(orbit_size(2, 16, 4), 4369);
        assert_eq!(orbit_size(2, 16, 8), 257);
        assert_eq!(orbit_size(2, 24, 1), (1 << 24) - 1);
    }

    #[test]
    fn modular_power() {
        assert_eq!(pow_mod(3, 4, 7), 4);
        assert_eq!(pow_mod(2, 0, 5), 1);
    }
}
