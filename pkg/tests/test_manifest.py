import dataclasses

from rough_sheet.manifest import RunManifest, manifest_hash
from rough_sheet.noise import GridSpec


def make(seed=0, **kw):
    g = GridSpec(t_max=1.0, n_t=8, x_min=-3.0, x_max=3.0, n_x=64)
    args = dict(command="simulate", op="heat", H=0.25, d=1, grid=g,
                drift="none", n_replicas=4, base_seed=seed,
                tolerances={"sup_tol": 1e-8})
    args.update(kw)
    return RunManifest.create(**args)


def test_roundtrip_lossless():
    m = make()
    back = RunManifest.from_json(m.to_json())
    assert back == m


def test_hash_excludes_timestamp():
    m = make()
    later = dataclasses.replace(m, timestamp="2099-01-01T00:00:00+00:00")
    assert manifest_hash(m) == manifest_hash(later)
    assert len(manifest_hash(m)) == 12


def test_hash_tracks_content():
    assert manifest_hash(make(seed=0)) != manifest_hash(make(seed=1))
    assert manifest_hash(make()) != manifest_hash(make(op="wave"))


def test_sigma_default_identity():
    m = make(d=2)
    assert m.sigma == ((1.0, 0.0), (0.0, 1.0))
