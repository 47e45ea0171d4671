// Batch front-end: subcommand parsing, task scheduling, and the run
// manifest.
//
//   run <config>         every configured task, in declared order
//   sweep <config>       only the sweep tasks of the config
//   verify <config>      only the verify tasks (an implicit default
//                        verify task when the config declares none)
//   demo-recurrence      configless closed-form demo print
//
// Flags: --out <dir> overrides output.directory, --threads <n> sizes the
// task worker pool (tasks are independent; results are aggregated
// single-threaded in declared order), --fail-fast stops scheduling new
// tasks after the first failure.  Exit codes: 0 all tasks ok, 1 at least
// one task failed or errored, 2 configuration error.

#pragma once

namespace cli {

int run_cli(int argc, const char* const* argv);

}  // namespace cli
