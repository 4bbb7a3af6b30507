fn main() -> std::process::ExitCode {
    orthofq::cli::main()
}
