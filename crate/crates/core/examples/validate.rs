//! The three community predicates on small graphs, including a web
//! community that is not connected.

use source_communities::communities::{is_extreme_set, is_source_community, is_web_community};
use source_communities::{Cost, Graph, VertexSet};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a-b 2, a-c 1, b-c 1, c-d 1, d-e 1, d-f 1, e-f 2
    let (a, b, c, d, e, f) = (0, 1, 2, 3, 4, 5);
    let g = Graph::from_edges(
        6,
        &[
            (a, b, Cost::integer(2)),
            (a, c, Cost::one()),
            (b, c, Cost::one()),
            (c, d, Cost::one()),
            (d, e, Cost::one()),
            (d, f, Cost::one()),
            (e, f, Cost::integer(2)),
        ],
    )?;
    let outer = VertexSet::from_iter(6, [a, b, e, f]);
    println!("{{a,b,e,f}} connected: false, web community: {}", is_web_community(&g, &outer)?);
    println!("{{a,b,e,f}} extreme set: {}", is_extreme_set(&g, &outer)?);

    let path = Graph::from_edges(3, &[(0, 1, Cost::integer(2)), (1, 2, Cost::one())])?;
    let ab = VertexSet::from_iter(3, [0, 1]);
    println!("a -2- b -1- c: {{a,b}} source community of a: {}", is_source_community(&path, &ab, 0)?);
    let unit = Graph::unit(3, &[(0, 1), (1, 2)]);
    println!("a -1- b -1- c: {{a,b}} source community of a: {}", is_source_community(&unit, &ab, 0)?);
    Ok(())
}
