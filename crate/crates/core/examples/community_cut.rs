//! Community cut between the two highest-degree members of the karate club.

use source_communities::maxflow::community_cut_vertex;
use source_communities::parse::{read_graph, Format};
use source_communities::VertexSet;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/karate.gml");
    let g = read_graph(path.as_ref(), Some(Format::Gml))?;

    let mut by_degree: Vec<usize> = (0..g.n()).collect();
    by_degree.sort_by(|&a, &b| g.weighted_degree(b).cmp(&g.weighted_degree(a)).then(a.cmp(&b)));
    let (s, t) = (by_degree[0], by_degree[1]);

    let cut = community_cut_vertex(&g, s, &VertexSet::singleton(g.n(), t))?;
    println!("s = {}, t = {}, lambda = {}", g.label(s), g.label(t), cut.cost);
    println!("SC(s,t)    {:?}", g.labels_of(&cut.sc_s));
    println!("SC(t,s)    {:?}", g.labels_of(&cut.sc_t));
    println!("indecisive {:?}", g.labels_of(&cut.indecisive));
    Ok(())
}
