//! Shared fixtures for the benchmark harness.

use dessins::Dessin;

pub fn fixtures() -> Vec<(&'static str, Dessin)> {
    vec![
        ("star4", Dessin::star(4)),
        ("path4", Dessin::path(4)),
        ("polygon2", Dessin::polygon(2)),
        ("bouquet4", Dessin::bouquet(4)),
    ]
}
