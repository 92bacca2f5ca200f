//! Parallel evaluation of every graph class of a degree.

use dashmap::DashMap;
use log::{info, warn};
use rayon::prelude::*;

use logtangent_core::aggregate::{group_sums, table_from_sums, ContributionTable};
use logtangent_core::contrib::{contribution_direct, contribution_split, Memo};
use logtangent_core::exactq::RatFunc;
use logtangent_core::locgraph::{enumerate_classes, CanonKey, GraphClass, Mode};

use crate::cache::DiskCache;
use crate::CliError;

/// Split-recursion memo shared between worker threads.
#[derive(Default)]
pub struct SharedMemo(DashMap<CanonKey, RatFunc>);

impl Memo for SharedMemo {
    fn lookup(&self, key: &CanonKey) -> Option<RatFunc> {
        self.0.get(key).map(|v| v.clone())
    }

    fn store(&self, key: CanonKey, value: RatFunc) {
        self.0.insert(key, value);
    }
}

pub struct Engine {
    pool: rayon::ThreadPool,
    cache: Option<DiskCache>,
    memo: SharedMemo,
}

impl Engine {
    pub fn new(jobs: usize, cache: Option<DiskCache>) -> Result<Self, CliError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        Ok(Engine {
            pool,
            cache,
            memo: SharedMemo::default(),
        })
    }

    /// Split-evaluator values of every class, in enumeration order. Cached
    /// values are reused; new ones are written after the parallel phase by
    /// this thread alone.
    pub fn contributions(&self, d: u32) -> Result<Vec<(GraphClass, RatFunc)>, CliError> {
        self.evaluate(d, self.cache.as_ref())
    }

    fn evaluate(
        &self,
        d: u32,
        cache: Option<&DiskCache>,
    ) -> Result<Vec<(GraphClass, RatFunc)>, CliError> {
        if d >= 7 {
            warn!("degree {d} takes minutes to hours; consider --cache-dir");
        }
        let classes = enumerate_classes(d)?;
        info!("degree {d}: {} graph classes", classes.len());
        let results: Vec<(RatFunc, bool)> = self.pool.install(|| {
            classes
                .par_iter()
                .map(|c| match cache.and_then(|cache| cache.load(&c.key)) {
                    Some(v) => (v, true),
                    None => (contribution_split(&c.tree, &self.memo), false),
                })
                .collect()
        });
        if let Some(cache) = cache {
            let mut written = 0usize;
            for (c, (v, hit)) in classes.iter().zip(&results) {
                if *hit {
                    continue;
                }
                if let Err(e) = cache.store(&c.key, v) {
                    warn!("cache write to {} failed: {e}", cache.dir().display());
                    break;
                }
                written += 1;
            }
            info!("cache: {written} new entries");
        }
        Ok(classes.into_iter().zip(results.into_iter().map(|(v, _)| v)).collect())
    }

    pub fn table(&self, d: u32, mode: Mode) -> Result<ContributionTable, CliError> {
        let contribs = self.contributions(d)?;
        let sums = group_sums(mode, contribs.iter().map(|(c, v)| (c, v)));
        Ok(table_from_sums(d, mode, sums)?)
    }

    /// Classes whose direct and split values differ. Bypasses the disk cache.
    pub fn cross_check(&self, d: u32) -> Result<(usize, Vec<CanonKey>), CliError> {
        let contribs = self.evaluate(d, None)?;
        let bad = self.pool.install(|| {
            contribs
                .par_iter()
                .filter(|(c, v)| contribution_direct(&c.tree.to_graph()) != *v)
                .map(|(c, _)| c.key.clone())
                .collect()
        });
        Ok((contribs.len(), bad))
    }
}
