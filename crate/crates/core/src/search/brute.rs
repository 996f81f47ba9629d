//! Exhaustive search: float prefilter over every admissible tuple, exact
//! confirmation by the canonical radical sum.

use rayon::prelude::*;

use crate::dispersion::{DispersionLaw, WaveVector};
use crate::error::Result;
use crate::exact::{radical_sum_is_zero, RadicalSum, Rational};

use super::table::{check_pairs, finish, momentum_key, Budget, ModeTable};
use super::{check_search, Conservation, ResonanceCondition, SearchDomain, SearchOptions, SolutionSet};

pub fn brute_force_search(
    law: &DispersionLaw,
    condition: &ResonanceCondition,
    domain: &SearchDomain,
) -> Result<SolutionSet> {
    brute_force_search_with(law, condition, domain, &SearchOptions::default())
}

pub fn brute_force_search_with(
    law: &DispersionLaw,
    condition: &ResonanceCondition,
    domain: &SearchDomain,
    options: &SearchOptions,
) -> Result<SolutionSet> {
    check_search(law, condition, domain, options)?;
    let table = ModeTable::build(law, domain)?;
    let pool = options.pool()?;
    let budget = Budget::new(options.max_solutions);
    let chunks = pool.install(|| match condition.arity() {
        3 => triads(&table, condition, options, &budget),
        _ => quartets(&table, condition, options, &budget),
    })?;
    finish(chunks, options.max_solutions)
}

fn exact_zero(table: &ModeTable, idx: &[u32], signs: &[i8]) -> Result<bool> {
    if table.exact.is_empty() {
        return Ok(true);
    }
    let degree = table.exact[0].degree();
    let mut sum = RadicalSum::new(degree);
    for (&i, &s) in idx.iter().zip(signs) {
        sum.push(table.exact[i as usize].scale(Rational::from_integer(s as i128))?)?;
    }
    Ok(radical_sum_is_zero(&sum).0)
}

fn tolerance(table: &ModeTable, options: &SearchOptions) -> f64 {
    options.prefilter_tolerance * table.max_abs_omega.max(1.0)
}

fn triads(
    table: &ModeTable,
    condition: &ResonanceCondition,
    options: &SearchOptions,
    budget: &Budget,
) -> Result<Vec<Vec<super::ResonantSet>>> {
    let n = table.len();
    let signs = condition.signs;
    let sv = signs.to_vec();
    let s2 = sv[2] as i64;
    let tol = tolerance(table, options);
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let ki = table.modes[i];
            for j in i + 1..n {
                let kj = table.modes[j];
                let target = -(s2 as f64) * (table.omega[i] + table.omega[j]);
                let tm = -s2 * (ki.m as i64 + kj.m as i64);
                let tn = -s2 * (ki.n as i64 + kj.n as i64);
                let mut consider = |c: u32| -> Result<()> {
                    if (table.omega[c as usize] - target).abs() > tol {
                        return Ok(());
                    }
                    let idx = [i as u32, j as u32, c];
                    if !exact_zero(table, &idx, &sv)? {
                        return Ok(());
                    }
                    if let Some(set) = table.solution(&idx, signs, condition.conservation)? {
                        budget.take(1)?;
                        out.push(set);
                    }
                    Ok(())
                };
                match condition.conservation {
                    Conservation::FrequencyAndVector => {
                        let (Ok(m), Ok(nn)) = (i32::try_from(tm), i32::try_from(tn)) else {
                            continue;
                        };
                        if let Some(c) = table.lookup(WaveVector::new(m, nn)) {
                            consider(c)?;
                        }
                    }
                    Conservation::FrequencyAndZonal => {
                        let Ok(m) = i32::try_from(tm) else { continue };
                        for &c in table.with_m(m) {
                            consider(c)?;
                        }
                    }
                    Conservation::FrequencyOnly => {
                        for c in table.omega_window(target - tol, target + tol) {
                            consider(c)?;
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect()
}

/// Partial sum `σ₂ω_c + σ₃ω_d` of the right-hand pair, keyed by momentum.
struct PairEntry {
    key: u64,
    partial: f64,
    c: u32,
    d: u32,
}

fn quartets(
    table: &ModeTable,
    condition: &ResonanceCondition,
    options: &SearchOptions,
    budget: &Budget,
) -> Result<Vec<Vec<super::ResonantSet>>> {
    let n = table.len();
    let signs = condition.signs;
    let sv = signs.to_vec();
    let (s2, s3) = (sv[2], sv[3]);
    let cons = condition.conservation;
    let tol = tolerance(table, options);

    let expected = if s2 == s3 { n * n.saturating_sub(1) / 2 } else { n * n };
    check_pairs(expected, options.max_pairs)?;
    let mut right: Vec<PairEntry> = (0..n)
        .into_par_iter()
        .flat_map_iter(|c| {
            let start = if s2 == s3 { c + 1 } else { 0 };
            (start..n).map(move |d| {
                let (kc, kd) = (table.modes[c], table.modes[d]);
                let m = s2 as i64 * kc.m as i64 + s3 as i64 * kd.m as i64;
                let nn = s2 as i64 * kc.n as i64 + s3 as i64 * kd.n as i64;
                PairEntry {
                    key: momentum_key(cons, m, nn),
                    partial: s2 as f64 * table.omega[c] + s3 as f64 * table.omega[d],
                    c: c as u32,
                    d: d as u32,
                }
            })
        })
        .collect();
    right.par_sort_unstable_by(|a, b| {
        a.key
            .cmp(&b.key)
            .then(a.partial.total_cmp(&b.partial))
            .then((a.c, a.d).cmp(&(b.c, b.d)))
    });

    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            let ka = table.modes[a];
            for b in a + 1..n {
                let kb = table.modes[b];
                let key = momentum_key(cons, -(ka.m as i64 + kb.m as i64), -(ka.n as i64 + kb.n as i64));
                let want = -(table.omega[a] + table.omega[b]);
                let lo = want - tol;
                let start = right.partition_point(|e| e.key < key || (e.key == key && e.partial < lo));
                for e in right[start..]
                    .iter()
                    .take_while(|e| e.key == key && e.partial <= want + tol)
                {
                    let idx = [a as u32, b as u32, e.c, e.d];
                    if !exact_zero(table, &idx, &sv)? {
                        continue;
                    }
                    if let Some(set) = table.solution(&idx, signs, cons)? {
                        budget.take(1)?;
                        out.push(set);
                    }
                }
            }
            Ok(out)
        })
        .collect()
}
