//! Recomputes both point tables and compares them with the printed entries.

fn main() -> real_bundles::Result<()> {
    print!("{}", real_bundles::tables::render_tables()?);
    Ok(())
}
