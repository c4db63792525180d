//! Complete cut-clustering hierarchy of the karate club with exact
//! breakpoints, and the level of highest modularity.

use source_communities::clustering::{complete_hierarchy, modularity};
use source_communities::parse::{read_graph, Format};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/karate.gml");
    let g = read_graph(path.as_ref(), Some(Format::Gml))?;
    let h = complete_hierarchy(&g)?;

    println!("h = {}, CutC calls = {}", h.h(), h.cutc_calls);
    for (i, level) in h.levels.iter().enumerate() {
        let q = modularity(&g, &level.clustering)?;
        print!("level {i}: {} clusters, Q = {:.4}", level.clustering.len(), q.to_f64());
        match h.breakpoints.get(i) {
            Some(b) => println!(", next breakpoint {b}"),
            None => println!(),
        }
    }
    let best = h.best_modularity_level(&g)?;
    for cluster in h.levels[best].clustering.labelled(&g) {
        if cluster.len() > 1 {
            println!("{}", cluster.join(" "));
        }
    }
    Ok(())
}
