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

//! Acceptance suite runner (`harness = false`): one line per criterion,
//! nonzero exit if any fails.

use brickqec::acceptance::{run_suite, SuiteOptions};
use brickqec::parallel::default_workers;

fn main() {
    // `cargo test -- --list` and filters from the libtest CLI are not meaningful here.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let opts = SuiteOptions::new(default_workers());
    println!("running acceptance suite with {} workers", opts.workers);
    let results = run_suite(&opts, |r| println!("{}", r.line()));
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!(
        "acceptance: {} passed, {} failed",
        results.len() - failed.len(),
        failed.len()
    );
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
