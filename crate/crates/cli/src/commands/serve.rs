use std::net::SocketAddr;
use std::sync::Arc;

use crate::args::ServeArgs;
use crate::config::detector_config;
use crate::failure::{CliResult, Failure};
use crate::server::{router, AppState};

pub fn run(args: &ServeArgs) -> CliResult {
    let cfg = detector_config(&args.detector)?;
    if let Some(ui) = &args.ui {
        if !ui.is_dir() {
            return Err(Failure::config(format!("{} is not a directory", ui.display())));
        }
    }
    let (state, skipped) = AppState::open(&args.root, cfg, args.ui.clone()).map_err(Failure::config)?;
    for s in &skipped {
        eprintln!("warning: skipping {}: {}", s.path.display(), s.reason);
    }

    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Internal(e.to_string()))?;
    runtime.block_on(async {
        let addr = SocketAddr::new(args.host, args.port);
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| Failure::config(format!("cannot listen on {addr}: {e}")))?;
        println!(
            "serving {} image(s) from {} on http://{}",
            state.image_count(),
            args.root.display(),
            listener.local_addr().map_or(addr, |a| a)
        );
        axum::serve(listener, router(Arc::new(state)))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(|e| Failure::Internal(e.to_string()))
    })
}
