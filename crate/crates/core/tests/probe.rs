use involutive::charvar::variety_span;
use involutive::config::Caps;
use involutive::fixtures::{self, FixtureParams};

#[test]
fn probe() {
    let caps = Caps::default();
    let t = fixtures::artificial_355(&FixtureParams::default()).unwrap();
    for seed in [0u64, 7, 123456789, 42, 999, 31337] {
        match variety_span(&t, seed, &caps) {
            Ok(d) => {
                println!(
                    "seed {seed}: span dim {} rounds {} log_len {}",
                    d.span.dim(),
                    d.rounds,
                    d.slice_log.len()
                );
                for rec in &d.slice_log {
                    println!(
                        "  r{} c{} t{} pts {:?} dim {}",
                        rec.round, rec.codim, rec.trial, rec.points, rec.span_dim_after
                    );
                }
            }
            Err(e) => println!("seed {seed}: ERR {e}"),
        }
    }
}
