use cyclodet::arith::is_prime;
use cyclodet::pell::legendre_two;
use cyclodet::search::{search, Predicate};

/// `(P_p, Q_p) mod p²` by stepping the recurrences.
fn stepped(p: u64) -> (u64, u64) {
    let m = p * p;
    let (mut p0, mut p1, mut q0, mut q1) = (0u64, 1u64, 2u64, 2u64);
    for _ in 0..p {
        (p0, p1) = (p1, (2 * p1 + p0) % m);
        (q0, q1) = (q1, (2 * q1 + q0) % m);
    }
    (p0, q0)
}

#[test]
fn hits_match_stepped_recurrences() {
    let qp = search(Predicate::Qp2, 7, 3000, 2).unwrap();
    let pp = search(Predicate::Pp2, 7, 3000, 2).unwrap();
    let primes: Vec<u64> = (7..=3000).filter(|&p| is_prime(p)).collect();
    assert_eq!(qp.scanned, primes.len() as u64);
    let want_qp: Vec<u64> = primes.iter().copied().filter(|&p| stepped(p).1 == 2).collect();
    let want_pp: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| {
            let m = (p * p) as i64;
            let lhs = 2 * stepped(p).0 as i64;
            (lhs - (2 * legendre_two(p) - p as i64)).rem_euclid(m) == 0
        })
        .collect();
    assert_eq!(qp.hits, want_qp);
    assert_eq!(pp.hits, want_pp);
}

#[test]
fn independent_of_job_count() {
    for pred in [Predicate::Qp2, Predicate::Pp2] {
        let a = search(pred, 7, 120_000, 1).unwrap();
        let b = search(pred, 7, 120_000, 5).unwrap();
        assert_eq!((a.hits, a.scanned), (b.hits, b.scanned));
    }
}

#[test]
fn block_edges_are_covered() {
    // 4099 and 8191 sit just past and just below block boundaries.
    let r = search(Predicate::Qp2, 4099, 8191, 3).unwrap();
    let n = (4099..=8191).filter(|&p| is_prime(p)).count() as u64;
    assert_eq!(r.scanned, n);
    let r = search(Predicate::Qp2, 13, 13, 1).unwrap();
    assert_eq!(r.hits, vec![13]);
    assert_eq!(r.boundary_hit, Some(13));
}
