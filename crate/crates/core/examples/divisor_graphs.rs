//! Build the three graphs of a degree set and print their sizes, diameters
//! and the bipartite graph in DOT.

use bipdiv::{build_graph, DegreeSet, Flavor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1,21,1183,6591".into());
    let cd: DegreeSet = text.parse()?;
    for flavor in Flavor::ALL {
        let g = build_graph(&cd, flavor);
        println!(
            "{:>5}: {} vertices, {} edges, {} components, diameter {:?}",
            flavor.name(),
            g.vertex_count(),
            g.edge_count(),
            g.component_count(),
            g.diameter().ok()
        );
    }
    print!("{}", build_graph(&cd, Flavor::Bipartite).to_dot());
    Ok(())
}
