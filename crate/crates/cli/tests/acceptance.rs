//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line
//! (run with `--nocapture` to see them) and enforces its own time limit.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use optcol::construct::{
    construct, construct_near_optimal, construct_rate_1_n, g4_from_g3, near_optimal_bound,
    recursive_s4_twofold, residual_table_d4, CANONICAL_G3,
};
use optcol::convcode::column_bound;
use optcol::optsearch::{
    search_optimal_row, search_optimal_row_in, verify_optimal, wt_profile, RowLayout, RowOrder,
};
use optcol::simplex::{
    k_partial_simplex, m_fold, min_weight_block_code, partial_simplex, simplex_generator,
};
use optcol::{BitMatrix, BitVec, ConvCode, ProfileMethod};
use optcol_cli::reproduce::{self, Table};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn criterion(id: u32, limit: Duration, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let result = result.and_then(|()| {
        if elapsed <= limit {
            Ok(())
        } else {
            Err(format!("took {elapsed:.2?}, limit {limit:?}"))
        }
    });
    match &result {
        Ok(()) => println!("criterion {id}: PASS ({elapsed:.2?})"),
        Err(e) => println!("criterion {id}: FAIL ({elapsed:.2?}): {e}"),
    }
    if let Err(e) = result {
        panic!("criterion {id}: {e}");
    }
}

fn rows_of(rows: &[BitVec]) -> BTreeSet<String> {
    rows.iter().map(ToString::to_string).collect()
}

fn reproduced(table: Table) -> Outcome {
    for row in reproduce::run(table).map_err(|e| e.to_string())? {
        ensure!(
            row.ok,
            "{}: computed {} expected {}",
            row.label,
            row.computed,
            row.expected
        );
    }
    Ok(())
}

#[test]
fn criterion_1_delta3_tables() {
    criterion(1, Duration::from_secs(1), || {
        reproduced(Table::Ws3)?;
        reproduced(Table::OptRowsD3)?;
        let top = m_fold(&partial_simplex(3).unwrap(), 2).unwrap();
        let found = rows_of(&search_optimal_row(&top).unwrap().optimal_rows);
        // membership in both directions against (a b c d ā b̄ c̄ d̄), a+b+c+d = 1
        for v in 0u64..256 {
            let g = BitVec::from_u64(v, 8);
            let complement = (0..4).all(|i| g.get(i) != g.get(i + 4));
            let odd = (0..4).filter(|&i| g.get(i)).count() % 2 == 1;
            ensure!(
                found.contains(&g.to_string()) == (complement && odd),
                "row {g} misclassified"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_2_delta4_tables() {
    criterion(2, Duration::from_secs(30), || {
        reproduced(Table::Wt4)?;
        reproduced(Table::OptRowsD4)?;
        let g3: BitVec = CANONICAL_G3.parse().unwrap();
        let t = residual_table_d4(&g3, &g4_from_g3(&g3)).unwrap();
        let wt = wt_profile(&t, 1..=15).unwrap();
        ensure!(
            wt == [0, 0, 0, 0, 1, 1, 1, 2, 2, 3, 4, 4, 5, 6, 7],
            "wt^t = {wt:?}"
        );

        let top3 = m_fold(&partial_simplex(3).unwrap(), 2).unwrap();
        let g3s = search_optimal_row(&top3).unwrap().optimal_rows;
        let doubled: BTreeSet<String> = g3s.iter().map(|g| g4_from_g3(g).to_string()).collect();
        let mut total = 0;
        for g3 in &g3s {
            let top = recursive_s4_twofold(g3).unwrap();
            let r =
                search_optimal_row_in(&top, RowOrder::Lexicographic, RowLayout::Doubled).unwrap();
            ensure!(
                r.optimal_rows.len() == 8,
                "{} rows for {g3}",
                r.optimal_rows.len()
            );
            ensure!(
                rows_of(&r.optimal_rows) == doubled,
                "rows for {g3} are not (g3¹ g3¹ g3² g3²)"
            );
            total += r.optimal_rows.len();
        }
        ensure!(total == 64, "{total} optimal codes");
        Ok(())
    });
}

#[test]
fn criterion_3_rate_1_n_formula() {
    criterion(3, Duration::from_secs(60), || {
        let mut params: Vec<(usize, usize)> =
            (1..=2).flat_map(|m| (0..=3).map(move |d| (m, d))).collect();
        params.push((1, 4));
        for (m, delta) in params {
            let c = construct_rate_1_n(m, delta).unwrap();
            let n = c.n();
            let jmax = delta + 5;
            let want: Vec<usize> = (0..=jmax).map(|j| n + j.min(delta) * n / 2).collect();
            let trellis = c
                .distance_profile(jmax, ProfileMethod::Trellis)
                .unwrap()
                .values;
            let exhaustive = c
                .distance_profile(jmax, ProfileMethod::Exhaustive)
                .unwrap()
                .values;
            ensure!(
                trellis == want,
                "(m,δ)=({m},{delta}): trellis {trellis:?}, want {want:?}"
            );
            ensure!(
                exhaustive == want,
                "(m,δ)=({m},{delta}): exhaustive {exhaustive:?}"
            );
            let free = c.free_distance().unwrap();
            ensure!(
                free == n + delta * n / 2,
                "(m,δ)=({m},{delta}): free {free}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_4_k2_example() {
    criterion(4, Duration::from_secs(1), || {
        let c = construct(12, 2, 2).unwrap().code;
        for method in [ProfileMethod::Exhaustive, ProfileMethod::Trellis] {
            let d = c.distance_profile(1, method).unwrap().values;
            ensure!(d == [8, 14], "{method:?}: {d:?}");
        }
        Ok(())
    });
}

fn residual_code(c: &optcol::construct::Construction) -> ConvCode {
    let cols = &c.plan.extension.columns;
    let coeffs = (0..cols.nrows())
        .map(|i| cols.row_slice(i..i + 1))
        .collect();
    ConvCode::derive(cols.ncols(), 1, coeffs).unwrap()
}

#[test]
fn criterion_5_delta2_extensions() {
    criterion(5, Duration::from_secs(5), || {
        reproduced(Table::Delta2Cases)?;
        let n5 = construct(5, 1, 2).unwrap();
        let n6 = construct(6, 1, 2).unwrap();
        let n7 = construct(7, 1, 2).unwrap();

        // s = 1: d_j = n + (n-1)/2 j up to δ, free distance 2n - 1
        let d = n5.code.trellis_profile(6).unwrap();
        ensure!(
            d[..3] == [5, 7, 9] && d[3..].iter().all(|&x| x == 9),
            "n=5: {d:?}"
        );
        ensure!(n5.code.free_distance().unwrap() == 9, "n=5 free distance");

        // s = 2
        let r = residual_code(&n6).trellis_profile(6).unwrap();
        ensure!(r == [2, 3, 3, 4, 4, 5, 5], "n=6 residual {r:?}");
        let d = n6.code.trellis_profile(6).unwrap();
        ensure!(d[..3] == [6, 9, 11], "n=6 d_0..d_2 {d:?}");
        ensure!(d[3] >= 12 && d[4] >= 12, "n=6 d_3, d_4 below 2n: {d:?}");
        ensure!(n6.code.free_distance().unwrap() == 13, "n=6 free distance");

        // s = 3
        let r = residual_code(&n7).trellis_profile(6).unwrap();
        ensure!(r == [3, 4, 5, 6, 7, 7, 7], "n=7 residual {r:?}");
        let d = n7.code.trellis_profile(6).unwrap();
        ensure!(d[..3] == [7, 10, 13], "n=7 d_0..d_2 {d:?}");
        ensure!(d[3] >= 14, "n=7 d_3 below 2n: {d:?}");
        ensure!(n7.code.free_distance().unwrap() == 15, "n=7 free distance");
        Ok(())
    });
}

#[test]
fn criterion_6_bruteforce_optimality() {
    criterion(6, Duration::from_secs(120), || {
        for (n, k, delta) in [(2, 1, 1), (2, 1, 2), (3, 1, 1), (4, 1, 1), (4, 1, 2)] {
            let c = construct(n, k, delta).unwrap().code;
            let v = verify_optimal(&c, delta + 5).unwrap();
            ensure!(
                v.optimal,
                "({n},{k},{delta}): {:?} vs best {:?}, unresolved ties {}",
                v.candidate_profile,
                v.best_profile,
                v.unresolved_ties
            );
            if n == 2 {
                ensure!(
                    v.maximal_classes == 1,
                    "(2,1,{delta}): {} maximal classes",
                    v.maximal_classes
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_7_near_optimal_profile() {
    criterion(7, Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut pairs = BTreeSet::new();
        while pairs.len() < 20 {
            let delta = rng.random_range(1..=4);
            let n = rng.random_range(1..=40);
            if n % (1 << delta) != 0 {
                pairs.insert((n, delta));
            }
        }
        for (n, delta) in pairs {
            let (c, bound) = construct_near_optimal(n, delta).unwrap();
            ensure!(
                bound == near_optimal_bound(n, delta).unwrap(),
                "({n},{delta}) bound"
            );
            let d = c
                .distance_profile(delta, ProfileMethod::Trellis)
                .unwrap()
                .values;
            let e = c
                .distance_profile(delta, ProfileMethod::Exhaustive)
                .unwrap()
                .values;
            ensure!(d == e, "({n},{delta}): trellis {d:?}, exhaustive {e:?}");
            for j in 0..=delta {
                ensure!(
                    d[j] >= bound[j],
                    "({n},{delta}) j={j}: {} < {}",
                    d[j],
                    bound[j]
                );
            }
            let r = n % (1 << delta);
            let a_b = r.trailing_zeros() as usize + 1;
            for (j, &dj) in d.iter().enumerate().take(a_b) {
                ensure!(
                    2 * dj == 2 * n + j * n,
                    "({n},{delta}) j={j}: d_j = {dj} is not n + j n/2"
                );
            }
        }
        Ok(())
    });
}

// weight of u·M for every nonzero u, with u in Gray-code order
fn all_weights(m: &BitMatrix) -> Vec<(u64, usize)> {
    let mut cw = BitVec::zeros(m.ncols());
    (1u64..1 << m.nrows())
        .map(|i| {
            cw.xor_assign(m.row(i.trailing_zeros() as usize));
            (i ^ (i >> 1), cw.weight())
        })
        .collect()
}

#[test]
fn criterion_8_simplex_weights() {
    criterion(8, Duration::from_secs(60), || {
        for m in 1..=3usize {
            for k in 1..=10 {
                let s = m_fold(&simplex_generator(k).unwrap(), m).unwrap();
                ensure!(
                    all_weights(&s).iter().all(|&(_, w)| w == m << (k - 1)),
                    "S({k})^{m}"
                );
                ensure!(
                    min_weight_block_code(&s, None).unwrap() == m << (k - 1),
                    "S({k})^{m} minimum"
                );
            }
            for d in 1..=10 {
                let s = m_fold(&partial_simplex(d).unwrap(), m).unwrap();
                for (u, w) in all_weights(&s) {
                    let want = if u == 1 { m << (d - 1) } else { (m << d) >> 2 };
                    ensure!(w == want, "S({d})_1^{m}, u={u:b}: {w} != {want}");
                }
            }
            for k in 1..=10 {
                for delta in 0..=10 - k {
                    let s = m_fold(&k_partial_simplex(k, delta).unwrap(), m).unwrap();
                    for (u, w) in all_weights(&s) {
                        let want = if u >> k == 0 {
                            m << (delta + k - 1)
                        } else {
                            m * ((1 << (delta + k - 1)) - ((1 << delta) >> 1))
                        };
                        ensure!(
                            w == want,
                            "S({})_{k}^{m}, u={u:b}: {w} != {want}",
                            delta + k
                        );
                    }
                }
            }
        }
        Ok(())
    });
}

/// Random delay-free code with n <= 6, k <= 2 and degree <= 4. Row-reduced
/// codes have row degrees summing to the degree; the others have random
/// coefficients and a re-derived degree.
fn random_code(rng: &mut ChaCha8Rng, row_reduced: bool) -> ConvCode {
    loop {
        let k = rng.random_range(1..=2);
        let n = rng.random_range(k..=6);
        let delta = rng.random_range(0..=4);
        let mut nu = vec![0; k];
        if row_reduced {
            for _ in 0..delta {
                nu[rng.random_range(0..k)] += 1;
            }
        } else {
            nu.fill(delta / k);
        }
        let mu = nu.iter().copied().max().unwrap_or(0);
        let mut coeffs = vec![BitMatrix::zeros(k, n); mu + 1];
        for (r, &d) in nu.iter().enumerate() {
            for g in coeffs.iter_mut().take(d + 1) {
                for c in 0..n {
                    g.set(r, c, rng.random());
                }
            }
        }
        if coeffs[0].rank() < k {
            continue;
        }
        let code = if row_reduced {
            ConvCode::new(n, k, coeffs, delta)
        } else {
            ConvCode::derive(n, k, coeffs)
        };
        match code {
            Ok(c) if c.degree() <= 4 && (!row_reduced || c.is_row_reduced()) => return c,
            _ => continue,
        }
    }
}

#[test]
fn criterion_9_oracle_equivalence() {
    criterion(9, Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut above_generic = 0;
        for i in 0..600 {
            let row_reduced = i % 2 == 0;
            let c = random_code(&mut rng, row_reduced);
            let jmax = c.degree() + 4;
            let t = c
                .distance_profile(jmax, ProfileMethod::Trellis)
                .unwrap()
                .values;
            let e = c
                .distance_profile(jmax, ProfileMethod::Exhaustive)
                .unwrap()
                .values;
            ensure!(
                t == e,
                "code {i}: trellis {t:?}, exhaustive {e:?}\n{:?}",
                c.coeffs()
            );
            let b = c.bounds(jmax).unwrap();
            for j in 0..=jmax {
                let generic = column_bound(c.n(), c.k(), j);
                ensure!(
                    b.lower[j] <= t[j] && t[j] <= b.upper[j] && t[j] <= generic,
                    "code {i}, j={j}: {} <= {} <= {}, generic {generic}",
                    b.lower[j],
                    t[j],
                    b.upper[j]
                );
                ensure!(
                    !row_reduced || b.upper[j] <= b.cap[j],
                    "code {i}, j={j}: upper {} above cap {}",
                    b.upper[j],
                    b.cap[j]
                );
                if b.upper[j] > generic {
                    above_generic += 1;
                }
            }
        }
        // the per-code upper bound is not itself below the generic bound
        println!("  (j, code) pairs with upper > (n-k)(j+1)+1: {above_generic}");
        Ok(())
    });
}
