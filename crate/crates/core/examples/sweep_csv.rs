//! A client-count sweep written as CSV to stdout.

use satcache::sweep::{run_sweep, write_sweep_csv, SweepSpec, SweepVar};
use satcache::GridSpec;

fn main() -> satcache::Result<()> {
    let mut spec = SweepSpec::new(
        GridSpec::new(24, 24)?,
        SweepVar::Clients,
        vec![10.0, 100.0, 1000.0],
    );
    spec.caches = vec![0, 2, 4];
    spec.duration = 1000.0;
    spec.replications = 3;
    let rows = run_sweep(&spec)?;
    write_sweep_csv(std::io::stdout().lock(), spec.var, &rows)
}
