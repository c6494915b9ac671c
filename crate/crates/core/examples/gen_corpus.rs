//! Rewrites the bundled corpus files: `cargo run --example gen_corpus [DIR]`.

use std::path::PathBuf;

fn main() -> crossalg::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus"));
    crossalg::corpus::write_dir(&dir)?;
    println!("wrote {}", dir.display());
    Ok(())
}
