// Copyright 2026 The brickqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Index-ordered parallel map on a dedicated worker pool.

use rayon::prelude::*;

/// Default worker count when neither the flag nor the config sets one.
pub const WORKERS_ENV: &str = "BRICKQEC_WORKERS";

/// `[f(0), …, f(len−1)]` computed on `workers` threads. The output order
/// depends only on the index, never on completion order.
pub fn par_map<T, F>(workers: usize, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if workers <= 1 || len <= 1 {
        return (0..len).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| (0..len).into_par_iter().map(f).collect())
}

/// Like [`par_map`] but stops at the first error in index order.
pub fn try_par_map<T, E, F>(workers: usize, len: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    par_map(workers, len, f).into_iter().collect()
}

pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_by_index() {
        let serial = par_map(1, 100, |i| i * i);
        let parallel = par_map(4, 100, |i| i * i);
        assert_eq!(serial, parallel);
        let e: Result<Vec<usize>, usize> = try_par_map(3, 10, |i| if i % 4 == 3 { Err(i) } else { Ok(i) });
        assert_eq!(e, Err(3));
    }
}
