use optcol::simplex::{
    k_partial_simplex, m_fold, partial_simplex, simplex_generator, SimplexFamily,
};
use optcol::{BitMatrix, BitVec};

// weight of every u·M for u = 1 .. 2^rows - 1, Gray-code order
fn all_weights(m: &BitMatrix) -> Vec<(u64, usize)> {
    let mut out = Vec::with_capacity((1 << m.nrows()) - 1);
    let mut cw = BitVec::zeros(m.ncols());
    for i in 1u64..1 << m.nrows() {
        cw.xor_assign(m.row(i.trailing_zeros() as usize));
        out.push((i ^ (i >> 1), cw.weight()));
    }
    out
}

#[test]
fn simplex_is_constant_weight() {
    for k in 1..=8 {
        let s = simplex_generator(k).unwrap();
        assert!(
            all_weights(&s).iter().all(|&(_, w)| w == 1 << (k - 1)),
            "k = {k}"
        );
    }
}

#[test]
fn partial_simplex_weights() {
    for d in 1..=8 {
        for m in 1..=3 {
            let s = m_fold(&partial_simplex(d).unwrap(), m).unwrap();
            for (u, w) in all_weights(&s) {
                let want = if u == 1 { m << (d - 1) } else { (m << d) >> 2 };
                assert_eq!(w, want, "d = {d}, m = {m}, u = {u:b}");
            }
        }
    }
}

#[test]
fn k_partial_simplex_weights() {
    for k in 1..=4 {
        for delta in 0..=(8 - k) {
            let s = k_partial_simplex(k, delta).unwrap();
            assert_eq!(s.ncols(), SimplexFamily::k_partial(k, delta, 1).width());
            for m in 1..=3 {
                let f = m_fold(&s, m).unwrap();
                for (u, w) in all_weights(&f) {
                    let top_only = u >> k == 0;
                    let want = if top_only {
                        m << (delta + k - 1)
                    } else {
                        m * ((1 << (delta + k - 1)) - ((1 << delta) >> 1))
                    };
                    assert_eq!(w, want, "k = {k}, delta = {delta}, m = {m}, u = {u:b}");
                }
            }
        }
    }
}

#[test]
fn k_partial_partitions_the_space() {
    for k in 1..=3 {
        for delta in 0..=4 {
            let mut seen = vec![false; 1 << (k + delta)];
            let s = k_partial_simplex(k, delta).unwrap();
            for c in s.columns() {
                let v = c.iter().fold(0usize, |acc, b| acc << 1 | b as usize);
                assert!(!seen[v]);
                seen[v] = true;
                assert!(v >> delta != 0);
            }
            let missing = seen.iter().filter(|&&x| !x).count();
            assert_eq!(missing, 1 << delta);
        }
        assert_eq!(
            k_partial_simplex(1, k).unwrap(),
            partial_simplex(k + 1).unwrap()
        );
    }
}
