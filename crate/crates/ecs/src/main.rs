fn main() {
    std::process::exit(ecs::cli::run(std::env::args_os()));
}
