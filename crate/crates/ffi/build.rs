fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR");
    let config = cbindgen::Config::from_file("cbindgen.toml").expect("cbindgen.toml");
    match cbindgen::Builder::new().with_config(config).with_crate(&crate_dir).generate() {
        Ok(bindings) => {
            bindings.write_to_file("include/qtorus.h");
        }
        Err(e) => {
            // Header generation failures should not break `cargo check` of
            // dependents; the committed header stays in place.
            println!("cargo:warning=cbindgen failed: {e}");
        }
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
