use super::{BranchDatum, RamifyError, ZeuthenSolution};

/// Largest group order the enumerator accepts.
pub const MAX_ENUMERATION_ORDER: u64 = 512;

/// LHS minus RHS of 2(p - 1) = 2n(p' - 1) + sum over orbits of (n / n_i)(n_i - 1).
pub fn verify_zeuthen(p: u64, n: u64, p_prime: u64, branch: &[BranchDatum]) -> Result<i64, RamifyError> {
    if n == 0 {
        return Err(RamifyError::Input("group order must be positive".into()));
    }
    let mut rhs = 2 * n as i64 * (p_prime as i64 - 1);
    for b in branch {
        if b.n_i < 2 || n % b.n_i != 0 {
            return Err(RamifyError::Input(format!("stabilizer order {} does not divide {n}", b.n_i)));
        }
        rhs += b.orbits as i64 * (n / b.n_i) as i64 * (b.n_i as i64 - 1);
    }
    Ok(2 * (p as i64 - 1) - rhs)
}

/// Total simple branching of a degree-d cover from genus p to genus p'.
pub fn rh_cover_branch(d: u64, p: u64, p_prime: u64) -> Result<u64, RamifyError> {
    if d < 2 {
        return Err(RamifyError::Input("cover degree must be at least 2".into()));
    }
    let b = 2 * p as i64 - 2 - d as i64 * (2 * p_prime as i64 - 2);
    u64::try_from(b).map_err(|_| RamifyError::Input(format!("negative branching {b}")))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Harvey's conditions for a cyclic group of order n acting with quotient genus p' and the
/// given branch orders to exist.
fn realizable_cyclic(n: u64, p_prime: u64, orders: &[u64]) -> bool {
    let r = orders.len();
    if r == 0 {
        return p_prime >= 1;
    }
    if r == 1 || (p_prime == 0 && r < 3) {
        return false;
    }
    let m = orders.iter().fold(1, |acc, &x| lcm(acc, x));
    if n % m != 0 || (p_prime == 0 && m != n) {
        return false;
    }
    for i in 0..r {
        let l = orders.iter().enumerate().filter(|&(j, _)| j != i).fold(1, |acc, (_, &x)| lcm(acc, x));
        if l != m {
            return false;
        }
    }
    if m % 2 == 0 {
        let top = 1u64 << m.trailing_zeros();
        if orders.iter().filter(|&&x| x % top == 0).count() % 2 != 0 {
            return false;
        }
    }
    true
}

fn fill(n: u64, divs: &[u64], rest: i64, cur: &mut Vec<BranchDatum>, out: &mut Vec<Vec<BranchDatum>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    let Some((&d, tail)) = divs.split_first() else {
        return;
    };
    let w = ((n / d) * (d - 1)) as i64;
    let mut k = 0;
    while k as i64 * w <= rest {
        if k > 0 {
            cur.push(BranchDatum { n_i: d, orbits: k });
        }
        fill(n, tail, rest - k as i64 * w, cur, out);
        if k > 0 {
            cur.pop();
        }
        k += 1;
    }
}

/// All admissible data (n, p', branch) for cyclic groups of order 2 <= n <= n_max acting on
/// a curve of genus p: solutions of the relation that also satisfy Harvey's existence
/// conditions. Branch lists are sorted by stabilizer order, descending.
pub fn enumerate_zeuthen(p: u64, n_max: u64, primes_only: bool) -> Result<Vec<ZeuthenSolution>, RamifyError> {
    if p < 2 {
        return Err(RamifyError::Input("genus must be at least 2".into()));
    }
    if n_max > MAX_ENUMERATION_ORDER {
        return Err(RamifyError::Input(format!("n_max above {MAX_ENUMERATION_ORDER}")));
    }
    let is_prime = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
    let mut out = Vec::new();
    for n in 2..=n_max {
        if primes_only && !is_prime(n) {
            continue;
        }
        let mut divs: Vec<u64> = (2..=n).filter(|d| n % d == 0).collect();
        divs.reverse();
        let mut p_prime = 0u64;
        loop {
            let rest = 2 * (p as i64 - 1) - 2 * n as i64 * (p_prime as i64 - 1);
            if rest < 0 {
                break;
            }
            let mut found = Vec::new();
            fill(n, &divs, rest, &mut Vec::new(), &mut found);
            for branch in found {
                let orders: Vec<u64> =
                    branch.iter().flat_map(|b| std::iter::repeat(b.n_i).take(b.orbits as usize)).collect();
                if realizable_cyclic(n, p_prime, &orders) {
                    out.push(ZeuthenSolution { p, n, p_prime, branch });
                }
            }
            p_prime += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harvey_rules() {
        assert!(realizable_cyclic(5, 0, &[5, 5, 5]));
        assert!(!realizable_cyclic(7, 1, &[7]));
        assert!(!realizable_cyclic(4, 0, &[4, 2, 2]));
        assert!(realizable_cyclic(4, 0, &[4, 4, 2]));
        assert!(realizable_cyclic(3, 2, &[]));
    }
}
