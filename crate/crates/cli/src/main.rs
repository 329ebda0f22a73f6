fn main() {
    println!("glq2: suites not wired up yet");
}
