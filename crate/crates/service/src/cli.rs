//! `infoforge` command line: batch generation, re-rendering, index builds
//! and the HTTP server.

use crate::api::{router, AppState};
use crate::store::{FileStore, Sessions};
use clap::{Args, Parser, Subcommand};
use infoforge::assets::load_corpus;
use infoforge::compose::{extract_provenance, Provenance};
use infoforge::content::{parse_markdown, FsResolver};
use infoforge::geometry::{BBox, Canvas};
use infoforge::index::{build_indices, write_indices, IndexConfig};
use infoforge::layout::{EnergyWeights, PivotPlacement, Sketch};
use infoforge::pipeline::{Engine, EngineError, GenerateRequest};
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

/// The sample pack shipped in the source tree.
pub const DEFAULT_CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/assets/sample-pack");

#[derive(Debug, Parser)]
#[command(name = "infoforge", version, about = "Infographic synthesis from markdown content")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assemble the top-k infographics for a markdown file.
    Generate(GenerateArgs),
    /// Re-render an infographic from its provenance record.
    Render(RenderArgs),
    /// Corpus index maintenance.
    #[command(subcommand)]
    Index(IndexCommand),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct CorpusArg {
    /// Asset corpus directory.
    #[arg(long, env = "INFOFORGE_CORPUS", default_value = DEFAULT_CORPUS)]
    pub corpus: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Markdown content specification.
    #[arg(long)]
    pub input: PathBuf,
    /// Output size, e.g. 1200x1600.
    #[arg(long, value_parser = parse_canvas)]
    pub canvas: Canvas,
    /// Pivot graphic and its box in canvas fractions: `GRAPHIC@x,y,w,h`.
    /// GRAPHIC is an SVG file, a pivot asset id, or empty for an outline.
    #[arg(long)]
    pub pivot: Option<String>,
    /// Stroke JSON: `{"points": [[x, y], ...], "space": "canvas-px"}`.
    #[arg(long)]
    pub sketch: Option<PathBuf>,
    /// Weight of coverage against uniformity.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub top_k: usize,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub corpus: CorpusArg,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Provenance JSON, or an SVG that embeds one.
    #[arg(long)]
    pub provenance: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub corpus: CorpusArg,
}

#[derive(Debug, Subcommand)]
pub enum IndexCommand {
    /// Rebuild the cluster model and TF-IDF indices.
    Build(IndexBuildArgs),
}

#[derive(Debug, Args)]
pub struct IndexBuildArgs {
    #[command(flatten)]
    pub corpus: CorpusArg,
    /// Number of layout clusters.
    #[arg(long, default_value_t = 12)]
    pub k: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Where to write the index files; defaults to the corpus directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "INFOFORGE_ADDR", default_value = "127.0.0.1:8080")]
    pub addr: String,
    /// Session store directory.
    #[arg(long, env = "INFOFORGE_STORE", default_value = "infoforge-sessions")]
    pub store: PathBuf,
    /// Base directory for image references; defaults to the corpus.
    #[arg(long, env = "INFOFORGE_MEDIA")]
    pub media: Option<PathBuf>,
    #[command(flatten)]
    pub corpus: CorpusArg,
}

/// A failed command and the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or input files: exit 2.
    Validation(String),
    /// The engine refused or failed: exit 3.
    Pipeline(EngineError),
    /// Anything else, such as an unwritable output directory: exit 1.
    Other(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Pipeline(_) => 3,
            Failure::Other(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) | Failure::Other(m) => f.write_str(m),
            Failure::Pipeline(e) => write!(f, "{} ({})", e, e.code()),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Failure::Pipeline(e)
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into())
}

fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

pub fn parse_canvas(s: &str) -> Result<Canvas, String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got `{s}`"))?;
    let w = w.trim().parse().map_err(|_| format!("bad width `{w}`"))?;
    let h = h.trim().parse().map_err(|_| format!("bad height `{h}`"))?;
    Canvas::new(w, h).map_err(|e| e.to_string())
}

/// Splits `GRAPHIC@x,y,w,h` into the graphic part and a validated box.
pub fn parse_pivot_box(spec: &str) -> Result<(&str, BBox), String> {
    let (graphic, rect) = spec
        .rsplit_once('@')
        .ok_or_else(|| format!("expected GRAPHIC@x,y,w,h, got `{spec}`"))?;
    let v: Vec<f64> = rect
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad number `{p}` in pivot box")))
        .collect::<Result<_, _>>()?;
    let [x, y, w, h] = v[..] else {
        return Err(format!("pivot box needs 4 numbers, got {}", v.len()));
    };
    let bbox = BBox::new(x, y, w, h).map_err(|e| e.to_string())?;
    Ok((graphic, bbox))
}

fn resolve_pivot(spec: &str, engine: &Engine) -> Result<PivotPlacement, Failure> {
    let (graphic, bbox) = parse_pivot_box(spec).map_err(invalid)?;
    let mut pivot = PivotPlacement::new(bbox);
    if graphic.is_empty() {
        return Ok(pivot);
    }
    let path = Path::new(graphic);
    if path.is_file() {
        let svg = std::fs::read_to_string(path).map_err(|e| invalid(format!("{graphic}: {e}")))?;
        roxmltree::Document::parse(&svg).map_err(|e| invalid(format!("{graphic}: {e}")))?;
        pivot.svg = Some(svg);
    } else if engine.store().pivot(graphic).is_some() {
        pivot.graphic_ref = Some(graphic.to_string());
    } else {
        return Err(invalid(format!("pivot graphic `{graphic}` is neither a file nor a pivot asset")));
    }
    Ok(pivot)
}

fn read_sketch(path: &Path, canvas: &Canvas) -> Result<Sketch, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let sketch: Sketch = serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    sketch
        .polyline(canvas)
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    Ok(sketch)
}

fn open_engine(corpus: &Path) -> Result<Engine, Failure> {
    Ok(Engine::open(corpus)?)
}

/// Writes `infographic-N.svg` and `infographic-N.json` (provenance) per
/// output plus `ranking.json`; returns the SVG paths.
pub fn generate(args: &GenerateArgs) -> Result<Vec<PathBuf>, Failure> {
    let source = std::fs::read_to_string(&args.input).map_err(|e| invalid(format!("{}: {e}", args.input.display())))?;
    let content = parse_markdown(&source).map_err(|e| invalid(format!("{}: {e}", args.input.display())))?;
    let weights = EnergyWeights::new(args.alpha).map_err(|e| invalid(e.to_string()))?;
    if args.top_k == 0 {
        return Err(invalid("--top-k must be at least 1"));
    }
    let sketch = args.sketch.as_deref().map(|p| read_sketch(p, &args.canvas)).transpose()?;
    let engine = open_engine(&args.corpus.corpus)?;
    let pivot = args.pivot.as_deref().map(|p| resolve_pivot(p, &engine)).transpose()?;

    let base = args.input.parent().map_or_else(|| PathBuf::from("."), Path::to_path_buf);
    let generation = engine.generate(
        &GenerateRequest {
            content: &content,
            canvas: &args.canvas,
            pivot: pivot.as_ref(),
            sketch: sketch.as_ref(),
            weights,
            seed: args.seed,
            top_k: args.top_k,
        },
        &FsResolver { base },
    )?;

    std::fs::create_dir_all(&args.out).map_err(|e| Failure::Other(format!("{}: {e}", args.out.display())))?;
    let mut written = Vec::new();
    for (i, out) in generation.outputs.iter().enumerate() {
        let svg = args.out.join(format!("infographic-{}.svg", i + 1));
        write_file(&svg, &out.svg_doc)?;
        let record = serde_json::to_string_pretty(&out.provenance).expect("provenance serializes");
        write_file(&args.out.join(format!("infographic-{}.json", i + 1)), record + "\n")?;
        for w in &out.warnings {
            eprintln!("warning: infographic-{}: {}", i + 1, w.message);
        }
        written.push(svg);
    }
    let ranking = serde_json::to_string_pretty(&generation.layouts).expect("ranking serializes");
    write_file(&args.out.join("ranking.json"), ranking + "\n")?;
    for s in &generation.skipped {
        eprintln!("note: skipped layout {} ({})", s.layout_id, s.code);
    }
    Ok(written)
}

fn read_provenance(path: &Path) -> Result<Provenance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('<') {
        extract_provenance(&text).ok_or_else(|| invalid(format!("{} has no provenance record", path.display())))
    } else {
        serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }
}

pub fn render(args: &RenderArgs) -> Result<(), Failure> {
    let prov = read_provenance(&args.provenance)?;
    let engine = open_engine(&args.corpus.corpus)?;
    let out = engine.render(&prov)?;
    write_file(&args.out, out.svg_doc)
}

pub fn index_build(args: &IndexBuildArgs) -> Result<String, Failure> {
    if args.k == 0 {
        return Err(invalid("--k must be at least 1"));
    }
    let root = &args.corpus.corpus;
    let store = load_corpus(root).map_err(|e| Failure::Pipeline(e.into()))?;
    let config = IndexConfig {
        k: args.k,
        seed: args.seed,
        ..IndexConfig::default()
    };
    let indices = build_indices(&store, &config).map_err(|e| Failure::Pipeline(e.into()))?;
    let out = args.out.as_deref().unwrap_or(root);
    std::fs::create_dir_all(out).map_err(|e| Failure::Other(format!("{}: {e}", out.display())))?;
    write_indices(out, &indices).map_err(|e| Failure::Pipeline(e.into()))?;
    Ok(format!(
        "{} layouts in {} clusters; indices written to {}",
        store.layouts().len(),
        indices.cluster_model.k(),
        out.display()
    ))
}

pub fn serve(args: &ServeArgs) -> Result<(), Failure> {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info,tower_http=info".into()),
        )
        .with_writer(std::io::stderr)
        .init();
    let engine = Arc::new(open_engine(&args.corpus.corpus)?);
    let store = FileStore::open(&args.store).map_err(|e| Failure::Other(e.to_string()))?;
    let state = AppState {
        media_root: args.media.clone().unwrap_or_else(|| args.corpus.corpus.clone()),
        engine,
        sessions: Arc::new(Sessions::new(Arc::new(store))),
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Other(e.to_string()))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(&args.addr)
            .await
            .map_err(|e| invalid(format!("cannot bind {}: {e}", args.addr)))?;
        tracing::info!("listening on {}", args.addr);
        axum::serve(listener, router(state))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(|e| Failure::Other(e.to_string()))
    })
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate(a) => {
            for path in generate(&a)? {
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::Render(a) => render(&a),
        Command::Index(IndexCommand::Build(a)) => {
            println!("{}", index_build(&a)?);
            Ok(())
        }
        Command::Serve(a) => serve(&a),
    }
}

pub fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
