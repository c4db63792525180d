//! Writes a tree, a hierarchy and a clustering as JSON and DOT, then reads
//! the tree back.

use source_communities::clustering::complete_hierarchy;
use source_communities::export::{clustering_to_dot, hierarchy_to_json, tree_from_json, tree_to_dot, tree_to_json};
use source_communities::parse::{parse_graph, Format};
use source_communities::tree::build_sc_tree;

const GRAPH: &str = "\
# two triangles joined by a light edge
a b 3
b c 3
a c 3
c d 1/2
d e 2
e f 2
d f 2
";

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = parse_graph(GRAPH, Format::EdgeList)?;
    let tree = build_sc_tree(&g)?;
    let json = tree_to_json(&tree, None);
    let back = tree_from_json(&json)?;
    assert_eq!(back.edges(), tree.edges());
    print!("{}", tree_to_dot(&tree));

    let h = complete_hierarchy(&g)?;
    print!("{}", hierarchy_to_json(&g, &h, "parametric", None, None));
    print!("{}", clustering_to_dot(&g, &h.levels[1].clustering));
    Ok(())
}
