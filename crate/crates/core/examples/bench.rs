//! Parametric breakpoint search against the binary search baseline with
//! step 1/n².

use std::time::Instant;

use source_communities::clustering::{binary_search_hierarchy, complete_hierarchy};
use source_communities::parse::{read_graph, Format};
use source_communities::Cost;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("instance    n    m   h  param  binary  levels found by binary");
    for name in ["karate", "lesmis"] {
        let path = format!("{}/data/{name}.gml", env!("CARGO_MANIFEST_DIR"));
        let g = read_graph(path.as_ref(), Some(Format::Gml))?;
        let n = g.n() as i64;

        let start = Instant::now();
        let param = complete_hierarchy(&g)?;
        let t_param = start.elapsed();
        let start = Instant::now();
        let binary = binary_search_hierarchy(&g, &Cost::ratio(1, n * n))?;
        let t_binary = start.elapsed();

        println!(
            "{name:<8} {:>4} {:>4} {:>3} {:>6} {:>7}  {}",
            g.n(),
            g.m(),
            param.h(),
            param.cutc_calls,
            binary.cutc_calls,
            binary.h()
        );
        println!("         time {t_param:.2?} vs {t_binary:.2?}");
    }
    Ok(())
}
