fn main() {
    // Hermitian eigensolves in the oracle module go through the system
    // LAPACK shipped inside OpenBLAS (see src/oracle/lapack.rs).
    println!("cargo:rustc-link-lib=dylib=openblas");
}
