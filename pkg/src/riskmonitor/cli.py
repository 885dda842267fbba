"""Command line: synthesize data, train a model, serve the API."""

from pathlib import Path

import click

from . import ingest, model as model_mod
from .schema import default_schema, load_schema
from .service import AppState, create_app


def _schema_from(path: str | None):
    return load_schema(path) if path else default_schema()


@click.group()
def main():
    """Explainable risk-monitoring engine."""


@main.command("gen-data")
@click.option("--n", type=int, required=True, help="Number of patients (6 monthly records each).")
@click.option("--seed", type=int, required=True)
@click.option("--schema", "schema_path", type=click.Path(exists=True), default=None,
              help="Feature schema JSON; defaults to the packaged demo schema.")
@click.option("--out", type=click.Path(), required=True)
def gen_data(n, seed, schema_path, out):
    """Write a deterministic synthetic cohort CSV."""
    schema = _schema_from(schema_path)
    dataset = ingest.gen_synthetic(n, seed, schema)
    ingest.write_csv(dataset, out)
    positives = sum(r.label for r in dataset.records)
    click.echo(f"wrote {len(dataset.records)} rows ({n} patients) to {out}; "
               f"positive fraction {positives / len(dataset.records):.3f}")


@main.command()
@click.option("--data", type=click.Path(exists=True), required=True, help="Labeled CSV.")
@click.option("--schema", "schema_path", type=click.Path(exists=True), default=None)
@click.option("--test-split", type=float, default=0.2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--lr", type=float, default=model_mod.DEFAULT_HYPER[0], show_default=True)
@click.option("--epochs", type=int, default=model_mod.DEFAULT_HYPER[1], show_default=True)
@click.option("--l2", type=float, default=model_mod.DEFAULT_HYPER[2], show_default=True)
@click.option("--out", type=click.Path(), required=True, help="Model artifact path.")
def train(data, schema_path, test_split, seed, lr, epochs, l2, out):
    """Fit the risk classifier and persist the artifact."""
    schema = _schema_from(schema_path)
    dataset = ingest.load_csv(data, schema)
    train_set, test_set = ingest.train_test_split(dataset, test_split, seed)
    fitted = model_mod.fit(train_set, test_set, (lr, epochs, l2))
    Path(out).write_bytes(model_mod.save(fitted))
    train_acc, test_acc = fitted.metrics
    click.echo(f"train accuracy {train_acc:.4f}  test accuracy {test_acc:.4f}")
    click.echo(f"model written to {out}")


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--data", type=click.Path(exists=True), required=True)
@click.option("--schema", "schema_path", type=click.Path(exists=True), default=None)
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--cors", default=None, help="Allowed CORS origin, e.g. http://localhost:5173.")
def serve(model_path, data, schema_path, port, host, cors):
    """Serve the explanation API over the given dataset and model."""
    import uvicorn

    schema = _schema_from(schema_path)
    fitted = model_mod.load(Path(model_path).read_bytes(), schema)
    dataset = ingest.load_csv(data, schema)
    state = AppState.build(schema, fitted, dataset)
    click.echo(f"serving {len(state.patient_list)} patients on http://{host}:{port}")
    uvicorn.run(create_app(state, cors=cors), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
