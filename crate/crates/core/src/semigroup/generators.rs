//! Built-in families of *-semigroups and the `kind:args` spec syntax.

use super::{RingExtension, StarSemigroup};
use crate::error::{Error, Result};

/// Largest carrier a generator will build unless told otherwise.
pub const DEFAULT_CARRIER_CAP: usize = 512;

fn cap_check(what: &'static str, size: Option<usize>, cap: usize) -> Result<usize> {
    match size {
        Some(size) if size <= cap => Ok(size),
        Some(size) => Err(Error::CapExceeded { what, size, cap }),
        None => Err(Error::CapExceeded {
            what,
            size: usize::MAX,
            cap,
        }),
    }
}

fn build(
    name: String,
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    star: impl Fn(usize) -> usize,
    zero: usize,
) -> StarSemigroup {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(mul(a, b));
        }
    }
    StarSemigroup::from_trusted(name, n, table, (0..n).map(star).collect(), zero, None)
}

fn ring_tables(n: usize, add: impl Fn(usize, usize) -> usize, neg: impl Fn(usize) -> usize) -> RingExtension {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(add(a, b));
        }
    }
    RingExtension {
        add: table,
        neg: (0..n).map(neg).collect(),
    }
}

/// `Z_n` under multiplication, with the identity involution.
pub fn gen_zn_mult(n: usize) -> Result<StarSemigroup> {
    if n == 0 {
        return Err(Error::GeneratorSpec("zn:0".into()));
    }
    cap_check("zn carrier", Some(n), DEFAULT_CARRIER_CAP)?;
    Ok(build(format!("zn:{n}"), n, |a, b| a * b % n, |a| a, 0))
}

/// `Z_n` as a commutative *-ring.
pub fn gen_zn_ring(n: usize) -> Result<StarSemigroup> {
    let mut s = gen_zn_mult(n)?;
    s.name = format!("znring:{n}");
    s.ring = Some(ring_tables(n, |a, b| (a + b) % n, |a| (n - a) % n));
    Ok(s)
}

/// All `k x k` Boolean matrices under the Boolean product, transpose as involution.
///
/// Element `m` encodes entry `(i, j)` in bit `i*k + j`.
pub fn gen_boolean_matrices(k: usize) -> Result<StarSemigroup> {
    if k == 0 {
        return Err(Error::GeneratorSpec("bool:0".into()));
    }
    if k > 3 {
        return Err(Error::CapExceeded {
            what: "boolean matrix dimension",
            size: k,
            cap: 3,
        });
    }
    let n = 1usize << (k * k);
    let bit = |m: usize, i: usize, j: usize| m >> (i * k + j) & 1 == 1;
    let mul = |a: usize, b: usize| {
        let mut out = 0;
        for i in 0..k {
            for j in 0..k {
                if (0..k).any(|l| bit(a, i, l) && bit(b, l, j)) {
                    out |= 1 << (i * k + j);
                }
            }
        }
        out
    };
    let transpose = |a: usize| {
        let mut out = 0;
        for i in 0..k {
            for j in 0..k {
                if bit(a, i, j) {
                    out |= 1 << (j * k + i);
                }
            }
        }
        out
    };
    Ok(build(format!("bool:{k}"), n, mul, transpose, 0))
}

/// `M_k(Z_m)` with transpose as involution and its ring structure attached.
pub fn gen_matrix_ring(k: usize, m: usize) -> Result<StarSemigroup> {
    if k == 0 || m < 2 {
        return Err(Error::GeneratorSpec(format!("matring:{k},{m}")));
    }
    let n = cap_check(
        "matrix ring carrier",
        m.checked_pow((k * k) as u32),
        DEFAULT_CARRIER_CAP,
    )?;
    let decode = |x: usize| {
        let mut digits = vec![0; k * k];
        let mut x = x;
        for d in digits.iter_mut() {
            *d = x % m;
            x /= m;
        }
        digits
    };
    let encode = |digits: &[usize]| digits.iter().rev().fold(0, |acc, &d| acc * m + d);
    let mul = |a: usize, b: usize| {
        let (x, y) = (decode(a), decode(b));
        let mut out = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                out[i * k + j] = (0..k).map(|l| x[i * k + l] * y[l * k + j]).sum::<usize>() % m;
            }
        }
        encode(&out)
    };
    let transpose = |a: usize| {
        let x = decode(a);
        let mut out = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                out[j * k + i] = x[i * k + j];
            }
        }
        encode(&out)
    };
    let mut s = build(format!("matring:{k},{m}"), n, mul, transpose, 0);
    let add = |a: usize, b: usize| {
        let (x, y) = (decode(a), decode(b));
        let sum: Vec<usize> = x.iter().zip(&y).map(|(p, q)| (p + q) % m).collect();
        encode(&sum)
    };
    let neg = |a: usize| {
        let x: Vec<usize> = decode(a).iter().map(|d| (m - d) % m).collect();
        encode(&x)
    };
    s.ring = Some(ring_tables(n, add, neg));
    Ok(s)
}

/// The `k x k` matrix units together with zero, transpose as involution.
///
/// Index 0 is zero and `e_ij` is `1 + i*k + j`.
pub fn gen_brandt(k: usize) -> Result<StarSemigroup> {
    if k == 0 {
        return Err(Error::GeneratorSpec("brandt:0".into()));
    }
    let n = cap_check("brandt carrier", k.checked_mul(k).map(|x| x + 1), DEFAULT_CARRIER_CAP)?;
    let mul = |a: usize, b: usize| {
        if a == 0 || b == 0 {
            return 0;
        }
        let (i, j) = ((a - 1) / k, (a - 1) % k);
        let (p, q) = ((b - 1) / k, (b - 1) % k);
        if j == p {
            1 + i * k + q
        } else {
            0
        }
    };
    let star = |a: usize| {
        if a == 0 {
            0
        } else {
            let (i, j) = ((a - 1) / k, (a - 1) % k);
            1 + j * k + i
        }
    };
    Ok(build(format!("brandt:{k}"), n, mul, star, 0))
}

/// Subsets of a `k`-element set under intersection, identity involution.
pub fn gen_semilattice(k: usize) -> Result<StarSemigroup> {
    let n = cap_check(
        "semilattice carrier",
        1usize.checked_shl(k as u32).filter(|_| k < 64),
        DEFAULT_CARRIER_CAP,
    )?;
    Ok(build(format!("semilattice:{k}"), n, |a, b| a & b, |a| a, 0))
}

/// Componentwise product; element `(i, j)` is `i * |T| + j`.
pub fn direct_product(s: &StarSemigroup, t: &StarSemigroup) -> Result<StarSemigroup> {
    let (ns, nt) = (s.len(), t.len());
    let n = cap_check("product carrier", ns.checked_mul(nt), DEFAULT_CARRIER_CAP)?;
    let split = |x: usize| (x / nt, x % nt);
    let mul = |a: usize, b: usize| {
        let ((a1, a2), (b1, b2)) = (split(a), split(b));
        s.mul(a1, b1) * nt + t.mul(a2, b2)
    };
    let star = |a: usize| {
        let (a1, a2) = split(a);
        s.star(a1) * nt + t.star(a2)
    };
    let zero = s.zero() * nt + t.zero();
    let mut p = build(format!("{}*{}", s.name(), t.name()), n, mul, star, zero);
    if s.ring().is_some() && t.ring().is_some() {
        let add = |a: usize, b: usize| {
            let ((a1, a2), (b1, b2)) = (split(a), split(b));
            s.add(a1, b1) * nt + t.add(a2, b2)
        };
        let neg = |a: usize| {
            let (a1, a2) = split(a);
            s.neg(a1) * nt + t.neg(a2)
        };
        p.ring = Some(ring_tables(n, add, neg));
    }
    Ok(p)
}

fn parse_args(spec: &str, args: &str, count: usize) -> Result<Vec<usize>> {
    let parsed: std::result::Result<Vec<usize>, _> =
        args.split(',').map(|a| a.trim().parse::<usize>()).collect();
    match parsed {
        Ok(v) if v.len() == count => Ok(v),
        _ => Err(Error::GeneratorSpec(spec.to_string())),
    }
}

/// Builds a semigroup from a spec such as `zn:6`, `bool:2`, `matring:2,3`,
/// `brandt:2`, `semilattice:3`, `znring:6`, `unit:zn:6` or `zn:2*brandt:2`.
pub fn from_spec(spec: &str) -> Result<StarSemigroup> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("unit:") {
        let inner = from_spec(rest)?;
        return Ok(inner.unitize().with_name(spec));
    }
    if let Some((left, right)) = spec.split_once('*') {
        let p = direct_product(&from_spec(left)?, &from_spec(right)?)?;
        return Ok(p.with_name(spec));
    }
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| Error::GeneratorSpec(spec.to_string()))?;
    match kind {
        "zn" => gen_zn_mult(parse_args(spec, args, 1)?[0]),
        "znring" => gen_zn_ring(parse_args(spec, args, 1)?[0]),
        "bool" => gen_boolean_matrices(parse_args(spec, args, 1)?[0]),
        "matring" => {
            let v = parse_args(spec, args, 2)?;
            gen_matrix_ring(v[0], v[1])
        }
        "brandt" => gen_brandt(parse_args(spec, args, 1)?[0]),
        "semilattice" => gen_semilattice(parse_args(spec, args, 1)?[0]),
        _ => Err(Error::GeneratorSpec(spec.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::validate;

    fn squarefree(n: usize) -> bool {
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return false;
                }
            }
            p += 1;
        }
        true
    }

    #[test]
    fn zn_properness_matches_squarefree() {
        for n in 1..=100 {
            let s = gen_zn_mult(n).unwrap();
            assert_eq!(s.is_proper().proper, squarefree(n), "n = {n}");
        }
    }

    #[test]
    fn small_generators_validate() {
        for spec in [
            "zn:6", "znring:6", "bool:1", "bool:2", "matring:2,2", "matring:1,5", "brandt:2",
            "brandt:3", "semilattice:3", "zn:2*brandt:2", "unit:brandt:2", "znring:2*znring:3",
        ] {
            let s = from_spec(spec).unwrap();
            assert_eq!(s.name(), spec);
            validate(s.to_raw()).unwrap_or_else(|e| panic!("{spec}: {e}"));
        }
    }

    #[test]
    fn boolean_two_is_proper_and_sixteen() {
        let s = gen_boolean_matrices(2).unwrap();
        assert_eq!(s.len(), 16);
        assert!(s.is_proper().proper);
    }

    #[test]
    fn matrix_rings() {
        let m22 = gen_matrix_ring(2, 2).unwrap();
        assert_eq!(m22.len(), 16);
        // [[1,1],[1,1]] squares to zero under transpose over Z_2
        assert!(!m22.is_proper().proper);
        let m23 = gen_matrix_ring(2, 3).unwrap();
        assert_eq!(m23.len(), 81);
        assert!(m23.is_proper().proper);
    }

    #[test]
    fn caps() {
        assert!(matches!(gen_boolean_matrices(4), Err(Error::CapExceeded { .. })));
        assert!(matches!(gen_matrix_ring(3, 3), Err(Error::CapExceeded { .. })));
        assert!(matches!(from_spec("zn:6*bool:3"), Err(Error::CapExceeded { .. })));
        assert!(matches!(from_spec("nope:3"), Err(Error::GeneratorSpec(_))));
        assert!(matches!(from_spec("matring:2"), Err(Error::GeneratorSpec(_))));
    }
}
