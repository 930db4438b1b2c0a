//! Writes the corpus fixtures as canonical `.lgs.json` files.
//!
//! Usage: `cargo run -p ludoscene --example export_corpus -- <directory>`
//! (defaults to `corpus/` in the current directory).

use ludoscene::{fixture, FixtureName, FILE_EXTENSION};
use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir: PathBuf = std::env::args().nth(1).unwrap_or_else(|| "corpus".to_owned()).into();
    std::fs::create_dir_all(&dir)?;
    for name in FixtureName::ALL {
        let f = fixture(name);
        let path = dir.join(format!("{}{}", name.as_str(), FILE_EXTENSION));
        std::fs::write(&path, f.document)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
