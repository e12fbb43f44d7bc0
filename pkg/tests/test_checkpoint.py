# tests/test_checkpoint.py
import dataclasses
import json

import pytest

from src.gpfsums.engine import (
    LEVEL_SA,
    LEVEL_SB,
    Checkpoint,
    MODE_RAW,
    MertensState,
    SeriesEngine,
    VALIDITY_THRESHOLD,
    checkpoint_load,
    checkpoint_save,
)
from src.gpfsums.errors import CheckpointError, ConfigurationError, RunInterrupted
from src.gpfsums.precision import DD, ONE, ZERO

X = 20_000
SPAN = 2 ** 12


def _engine(**kwargs):
    return SeriesEngine(segment_size=2 ** 16, block_span=SPAN, anchor_interval=256, **kwargs)


def _sample_checkpoint(**overrides):
    fields = dict(
        kind="Sb",
        mode="raw",
        x=X,
        block_span=SPAN,
        anchor_interval=256,
        blocks_done=2,
        x_processed=2 * SPAN,
        primes_used=564,
        state=MertensState(p_last=8191, product=DD.of("17.25"), ln_p=DD.of("9.01"), ln_anchor_count=3),
        sums={"raw_sb": ONE, "raw_sa": ONE, "log_sb": DD.of("0.5"), "log_sa": ZERO, "theta": DD.of(8000)},
        max_ln_drift=1.5e-31,
    )
    fields.update(overrides)
    return Checkpoint(**fields)


def test_save_and_load(tmp_path):
    path = tmp_path / "run.json"
    saved = _sample_checkpoint()
    checkpoint_save(saved, path)
    loaded = checkpoint_load(path)
    assert loaded == saved
    assert not (tmp_path / "run.json.tmp").exists()


def test_load_refuses_missing_file(tmp_path):
    with pytest.raises(CheckpointError):
        checkpoint_load(tmp_path / "missing.json")


def test_load_refuses_tampered_file(tmp_path):
    path = tmp_path / "run.json"
    checkpoint_save(_sample_checkpoint(), path)
    document = json.loads(path.read_text())
    document["primes_used"] += 1
    path.write_text(json.dumps(document))
    with pytest.raises(CheckpointError):
        checkpoint_load(path)


def test_load_refuses_other_versions(tmp_path):
    path = tmp_path / "run.json"
    checkpoint_save(_sample_checkpoint(version=99), path)
    with pytest.raises(CheckpointError):
        checkpoint_load(path)


def test_load_refuses_garbage(tmp_path):
    path = tmp_path / "run.json"
    path.write_text("{not json")
    with pytest.raises(CheckpointError):
        checkpoint_load(path)
    path.write_text("{}")
    with pytest.raises(CheckpointError):
        checkpoint_load(path)


def test_save_to_unwritable_path(tmp_path):
    with pytest.raises(CheckpointError):
        checkpoint_save(_sample_checkpoint(), tmp_path / "no" / "such" / "dir" / "run.json")


def test_compatibility_check():
    checkpoint = _sample_checkpoint()
    checkpoint.check_compatible("Sb", "raw", X, SPAN, 256)
    with pytest.raises(CheckpointError):
        checkpoint.check_compatible("Sb", "raw", X + 1, SPAN, 256)
    with pytest.raises(CheckpointError):
        checkpoint.check_compatible("Sa", "raw", X, SPAN, 256)
    with pytest.raises(CheckpointError):
        checkpoint.check_compatible("Sb", "raw", X, SPAN * 2, 256)


def test_interrupted_run_resumes_to_identical_sums(tmp_path):
    path = tmp_path / "acc.json"
    uninterrupted = _engine().accumulate(X, LEVEL_SA)

    with pytest.raises(RunInterrupted) as info:
        _engine(halt_after_blocks=2).accumulate(X, LEVEL_SA, checkpoint_path=path)
    assert info.value.blocks_done == 2
    assert checkpoint_load(path).blocks_done == 2

    resumed = _engine(threads=2).accumulate(X, LEVEL_SA, checkpoint_path=path, resume=True)
    assert resumed.to_dict() == uninterrupted.to_dict()
    assert checkpoint_load(path).blocks_done == resumed.blocks


def test_checkpoint_every_other_block(tmp_path):
    path = tmp_path / "acc.json"
    with pytest.raises(RunInterrupted):
        _engine(checkpoint_every=2, halt_after_blocks=3).accumulate(X, LEVEL_SB, checkpoint_path=path)
    # the halt writes its own checkpoint off the regular cadence
    assert checkpoint_load(path).blocks_done == 3


def test_resume_refuses_other_parameters(tmp_path):
    path = tmp_path / "acc.json"
    with pytest.raises(RunInterrupted):
        _engine(halt_after_blocks=1).accumulate(X, LEVEL_SA, checkpoint_path=path)
    with pytest.raises(CheckpointError):
        _engine().accumulate(X + 1, LEVEL_SA, checkpoint_path=path, resume=True)
    with pytest.raises(CheckpointError):
        _engine().accumulate(X, LEVEL_SB, checkpoint_path=path, resume=True)


def test_resume_needs_a_path_and_a_file(tmp_path):
    with pytest.raises(ConfigurationError):
        _engine().accumulate(X, resume=True)
    with pytest.raises(CheckpointError):
        _engine().accumulate(X, checkpoint_path=tmp_path / "none.json", resume=True)


def test_raw_run_records_checkpoint_metadata(tmp_path):
    path = tmp_path / "sb.json"
    result = _engine().run_sb(X, mode="raw", checkpoint_path=path)
    assert result.checkpoint == {"path": str(path), "blocks": 5, "resumed": False}
    assert checkpoint_load(path).kind == "Sb"


def _untimed(result):
    return dataclasses.replace(result, elapsed_ms=0, checkpoint={})


def _halt_and_resume(run, engine, x, path, **kwargs):
    with pytest.raises(RunInterrupted) as info:
        run(engine(halt_after_blocks=2), x, checkpoint_path=path, **kwargs)
    assert checkpoint_load(path).blocks_done == info.value.blocks_done == 2
    return run(engine(), x, checkpoint_path=path, resume=True, **kwargs)


@pytest.mark.parametrize("run", [SeriesEngine.run_sb, SeriesEngine.run_sa], ids=["sb", "sa"])
def test_resumed_raw_run_matches_uninterrupted_run(tmp_path, run):
    uninterrupted = run(_engine(), X, mode=MODE_RAW)
    resumed = _halt_and_resume(run, _engine, X, tmp_path / "run.json", mode=MODE_RAW)
    assert resumed.checkpoint["resumed"] is True
    assert _untimed(resumed) == _untimed(uninterrupted)
    assert resumed.enclosure.lo == uninterrupted.enclosure.lo


@pytest.mark.slow
@pytest.mark.parametrize("run", [SeriesEngine.run_sb, SeriesEngine.run_sa], ids=["sb", "sa"])
def test_resumed_accelerated_run_matches_uninterrupted_run(tmp_path, run):
    def engine(**kwargs):
        return SeriesEngine(threads=4, **kwargs)

    x = VALIDITY_THRESHOLD
    uninterrupted = run(engine(), x)
    resumed = _halt_and_resume(run, engine, x, tmp_path / "run.json")
    assert _untimed(resumed) == _untimed(uninterrupted)
    assert resumed.certified_digits() == uninterrupted.certified_digits()
