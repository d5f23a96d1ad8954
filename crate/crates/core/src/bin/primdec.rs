fn main() {
    // CLI wired up once the library surface is complete.
    eprintln!("primdec: not yet implemented");
    std::process::exit(2);
}
