//! Thin binary wrapper; all behavior lives in the library's `cli` module.

/// Restore the default SIGPIPE disposition so piping into a closing
/// reader (`entgen oracle … | head`) terminates quietly like any other
/// command-line tool instead of panicking on a broken stdout.
#[cfg(unix)]
fn restore_sigpipe() {
    // SAFETY: resetting a signal disposition before any other work starts.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn restore_sigpipe() {}

fn main() {
    restore_sigpipe();
    std::process::exit(entgen::cli::run());
}
