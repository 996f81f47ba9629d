//! Class-bucketed search. Inside a class every frequency is a rational
//! multiple of one radical, so a resonance is a rational identity among the
//! multipliers; tuples spanning two classes must balance inside each class
//! separately, which for four modes means two balanced pairs.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::classes::ClassId;
use crate::dispersion::{DispersionLaw, WaveVector};
use crate::error::Result;
use crate::exact::Rational;

use super::table::{check_pairs, finish, momentum_key, signed, Budget, ModeTable};
use super::{check_search, Conservation, ResonanceCondition, ResonantSet, SearchDomain, SearchOptions, SolutionSet};

pub fn class_based_search(
    law: &DispersionLaw,
    condition: &ResonanceCondition,
    domain: &SearchDomain,
) -> Result<SolutionSet> {
    class_based_search_with(law, condition, domain, &SearchOptions::default())
}

pub fn class_based_search_with(
    law: &DispersionLaw,
    condition: &ResonanceCondition,
    domain: &SearchDomain,
    options: &SearchOptions,
) -> Result<SolutionSet> {
    law.require_exact()?;
    check_search(law, condition, domain, options)?;
    let table = ModeTable::build(law, domain)?;
    let buckets = buckets(&table);
    let ctx = Ctx {
        table: &table,
        condition,
        budget: Budget::new(options.max_solutions),
        max_pairs: options.max_pairs,
    };
    let pool = options.pool()?;
    let chunks = pool.install(|| -> Result<Vec<Vec<ResonantSet>>> {
        if condition.arity() == 3 {
            single_class_triads(&ctx, &buckets)
        } else {
            let mut chunks = single_class_quartets(&ctx, &buckets)?;
            chunks.extend(split_quartets(&ctx, &buckets)?);
            Ok(chunks)
        }
    })?;
    finish(chunks, options.max_solutions)
}

struct Bucket {
    class: ClassId,
    values: Vec<Rational>,
    members: HashMap<Rational, Vec<u32>>,
}

impl Bucket {
    fn members(&self, v: &Rational) -> &[u32] {
        self.members.get(v).map_or(&[], Vec::as_slice)
    }
}

fn buckets(table: &ModeTable) -> Vec<Bucket> {
    let mut by_class: BTreeMap<ClassId, BTreeMap<Rational, Vec<u32>>> = BTreeMap::new();
    for i in 0..table.len() {
        by_class
            .entry(table.class[i])
            .or_default()
            .entry(table.exact[i].coeff())
            .or_default()
            .push(i as u32);
    }
    by_class
        .into_iter()
        .map(|(class, vals)| Bucket {
            class,
            values: vals.keys().copied().collect(),
            members: vals.into_iter().collect(),
        })
        .collect()
}

struct Ctx<'a> {
    table: &'a ModeTable,
    condition: &'a ResonanceCondition,
    budget: Budget,
    max_pairs: usize,
}

impl Ctx<'_> {
    fn emit(&self, idx: &[u32], out: &mut Vec<ResonantSet>) -> Result<()> {
        if let Some(set) = self
            .table
            .solution(idx, self.condition.signs, self.condition.conservation)?
        {
            self.budget.take(1)?;
            out.push(set);
        }
        Ok(())
    }

    fn mode(&self, i: u32) -> WaveVector {
        self.table.modes[i as usize]
    }

    /// Candidates for the last position given the momentum it must carry
    /// (`target`, already multiplied by its sign) and its class multiplier.
    fn last_position(
        &self,
        bucket: &Bucket,
        value: &Rational,
        target: (i64, i64),
        mut f: impl FnMut(u32) -> Result<()>,
    ) -> Result<()> {
        match self.condition.conservation {
            Conservation::FrequencyAndVector => {
                let (Ok(m), Ok(n)) = (i32::try_from(target.0), i32::try_from(target.1)) else {
                    return Ok(());
                };
                if let Some(t) = self.table.lookup(WaveVector::new(m, n)) {
                    if self.table.class[t as usize] == bucket.class && self.table.exact[t as usize].coeff() == *value {
                        f(t)?;
                    }
                }
            }
            Conservation::FrequencyAndZonal => {
                for &t in bucket.members(value) {
                    if self.mode(t).m as i64 == target.0 {
                        f(t)?;
                    }
                }
            }
            Conservation::FrequencyOnly => {
                for &t in bucket.members(value) {
                    f(t)?;
                }
            }
        }
        Ok(())
    }
}

fn work_items(buckets: &[Bucket]) -> Vec<(usize, usize)> {
    buckets
        .iter()
        .enumerate()
        .flat_map(|(b, bk)| (0..bk.values.len()).map(move |v| (b, v)))
        .collect()
}

/// Member pairs `x < y` drawn from the multipliers `v0`, `v1`.
fn ordered_pairs<'a>(bucket: &'a Bucket, v0: &Rational, v1: &Rational) -> impl Iterator<Item = (u32, u32)> + 'a {
    let (xs, ys) = (bucket.members(v0), bucket.members(v1));
    xs.iter()
        .flat_map(move |&x| ys.iter().filter(move |&&y| x < y).map(move |&y| (x, y)))
}

fn single_class_triads(ctx: &Ctx, buckets: &[Bucket]) -> Result<Vec<Vec<ResonantSet>>> {
    let s2 = ctx.condition.signs.sign(2);
    work_items(buckets)
        .into_par_iter()
        .map(|(b, vi)| {
            let bucket = &buckets[b];
            let v0 = bucket.values[vi];
            let mut out = Vec::new();
            for v1 in &bucket.values {
                // v0 + v1 + σ₂ v2 = 0
                let v2 = signed(v0.checked_add(*v1)?, -s2)?;
                if !bucket.members.contains_key(&v2) {
                    continue;
                }
                for (x, y) in ordered_pairs(bucket, &v0, v1) {
                    let (kx, ky) = (ctx.mode(x), ctx.mode(y));
                    let target = (
                        -(s2 as i64) * (kx.m as i64 + ky.m as i64),
                        -(s2 as i64) * (kx.n as i64 + ky.n as i64),
                    );
                    ctx.last_position(bucket, &v2, target, |t| ctx.emit(&[x, y, t], &mut out))?;
                }
            }
            Ok(out)
        })
        .collect()
}

fn single_class_quartets(ctx: &Ctx, buckets: &[Bucket]) -> Result<Vec<Vec<ResonantSet>>> {
    let (s2, s3) = (ctx.condition.signs.sign(2), ctx.condition.signs.sign(3));
    // Right-hand multiplier pairs keyed by σ₂v₂ + σ₃v₃, per bucket.
    let total: usize = buckets.iter().map(|b| b.values.len() * b.values.len()).sum();
    check_pairs(total, ctx.max_pairs)?;
    let right: Vec<HashMap<Rational, Vec<(Rational, Rational)>>> = buckets
        .par_iter()
        .map(|bucket| {
            let mut map: HashMap<Rational, Vec<(Rational, Rational)>> = HashMap::new();
            for &v2 in &bucket.values {
                for &v3 in &bucket.values {
                    let key = signed(v2, s2)?.checked_add(signed(v3, s3)?)?;
                    map.entry(key).or_default().push((v2, v3));
                }
            }
            Ok(map)
        })
        .collect::<Result<_>>()?;

    work_items(buckets)
        .into_par_iter()
        .map(|(b, vi)| {
            let bucket = &buckets[b];
            let v0 = bucket.values[vi];
            let mut out = Vec::new();
            for v1 in &bucket.values {
                let need = v0.checked_add(*v1)?.checked_neg()?;
                let Some(rights) = right[b].get(&need) else { continue };
                for (x, y) in ordered_pairs(bucket, &v0, v1) {
                    let (kx, ky) = (ctx.mode(x), ctx.mode(y));
                    for (v2, v3) in rights {
                        for &z in bucket.members(v2) {
                            let kz = ctx.mode(z);
                            // x + y + σ₂z + σ₃t = 0
                            let sm = kx.m as i64 + ky.m as i64 + s2 as i64 * kz.m as i64;
                            let sn = kx.n as i64 + ky.n as i64 + s2 as i64 * kz.n as i64;
                            let target = (-(s3 as i64) * sm, -(s3 as i64) * sn);
                            ctx.last_position(bucket, v3, target, |t| ctx.emit(&[x, y, z, t], &mut out))?;
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect()
}

/// A pair of modes at two tuple positions whose signed multipliers cancel.
#[derive(Clone, Copy)]
struct BalancedPair {
    bucket: u32,
    x: u32,
    y: u32,
    key: u64,
}

fn balanced_pairs(ctx: &Ctx, buckets: &[Bucket], si: i8, sj: i8) -> Result<Vec<BalancedPair>> {
    let cons = ctx.condition.conservation;
    let chunks: Vec<Vec<BalancedPair>> = buckets
        .par_iter()
        .enumerate()
        .map(|(b, bucket)| {
            let mut out = Vec::new();
            for v in &bucket.values {
                // σᵢ v + σⱼ u = 0
                let u = signed(*v, -si * sj)?;
                for &x in bucket.members(v) {
                    for &y in bucket.members(&u) {
                        let (kx, ky) = (ctx.mode(x), ctx.mode(y));
                        let m = si as i64 * kx.m as i64 + sj as i64 * ky.m as i64;
                        let n = si as i64 * kx.n as i64 + sj as i64 * ky.n as i64;
                        out.push(BalancedPair {
                            bucket: b as u32,
                            x,
                            y,
                            key: momentum_key(cons, m, n),
                        });
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Quartets made of two balanced pairs from two different classes.
fn split_quartets(ctx: &Ctx, buckets: &[Bucket]) -> Result<Vec<Vec<ResonantSet>>> {
    let signs = ctx.condition.signs;
    let cons = ctx.condition.conservation;
    let partitions = [([0usize, 1], [2usize, 3]), ([0, 2], [1, 3]), ([0, 3], [1, 2])];
    let mut chunks = Vec::new();
    for (g1, g2) in partitions {
        let first = balanced_pairs(ctx, buckets, signs.sign(g1[0]), signs.sign(g1[1]))?;
        if first.is_empty() {
            continue;
        }
        let second = balanced_pairs(ctx, buckets, signs.sign(g2[0]), signs.sign(g2[1]))?;
        check_pairs(first.len() + second.len(), ctx.max_pairs)?;
        let mut by_key: HashMap<u64, Vec<BalancedPair>> = HashMap::new();
        for p in second {
            by_key.entry(p.key).or_default().push(p);
        }
        let part: Vec<Vec<ResonantSet>> = first
            .par_chunks(4096)
            .map(|chunk| {
                let mut out = Vec::new();
                for p in chunk {
                    let (m, n) = unpack(cons, p.key);
                    let Some(others) = by_key.get(&momentum_key(cons, -m, -n)) else {
                        continue;
                    };
                    for q in others {
                        if q.bucket == p.bucket {
                            continue;
                        }
                        let mut idx = [0u32; 4];
                        idx[g1[0]] = p.x;
                        idx[g1[1]] = p.y;
                        idx[g2[0]] = q.x;
                        idx[g2[1]] = q.y;
                        ctx.emit(&idx, &mut out)?;
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        chunks.extend(part);
    }
    Ok(chunks)
}

fn unpack(cons: Conservation, key: u64) -> (i64, i64) {
    match cons {
        Conservation::FrequencyOnly => (0, 0),
        Conservation::FrequencyAndZonal => (key as u32 as i32 as i64, 0),
        Conservation::FrequencyAndVector => ((key >> 32) as u32 as i32 as i64, key as u32 as i32 as i64),
    }
}
