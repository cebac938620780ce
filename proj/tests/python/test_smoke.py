"""End-to-end smoke of the python surface: every major route exercised once,
with the same pinned values the C++ suites check."""

import math

import untangle as ut


def test_compression_flow_contracts_and_inverts():
    f = ut.make_compression([0.0, 0.0], 1.0, 0.1, 1.5)
    y = f.apply([0.5, 0.5])
    assert math.hypot(*y) < 0.1
    back = f.invert(y)
    assert math.dist(back, [0.5, 0.5]) < 1e-9
    # Outside the support the map is the identity, bitwise.
    assert f.apply([2.0, 0.0]) == [2.0, 0.0]


def test_relocation_delivers_and_serializes():
    sets = [
        ut.RelocationSet(ut.sample_ball_cloud(ut.Ball([-3.0, 0.0], 0.9), 60, 1), ut.Ball([-3.0, 0.0], 1.0)),
        ut.RelocationSet(ut.sample_ball_cloud(ut.Ball([3.0, 0.0], 0.9), 60, 2), ut.Ball([3.0, 0.0], 1.0)),
    ]
    targets = [ut.Ball([0.0, 6.0], 1.0), ut.Ball([0.0, -6.0], 1.0)]
    res = ut.relocate_disjoint(ut.RelocationProblem(sets, targets))
    for img, tgt in zip(res.images, targets):
        assert ut.ball_contains_cloud(tgt, img)
    # JSON round trip replays the same bits.
    replay = ut.DiffeoPipeline.from_json(res.pipeline.to_json())
    probe = [-2.7, 0.3]
    assert replay.apply(probe) == res.pipeline.apply(probe)
    # The inverse is an actual inverse.
    assert math.dist(res.pipeline.invert(res.pipeline.apply(probe)), probe) < 1e-9


def test_toy_dataset_and_certificates():
    d = ut.gen_toy_abc(100, 7)
    raw = ut.certify_pairwise(d)
    assert not raw.all_separable  # the ring encloses both disks
    net = ut.toy_network()
    out = net.eval([-1.0, 1.0])
    assert abs(out[0] - 3.2105311137001142) < 1e-12
    assert abs(out[1] - 11.380787202796316) < 1e-12


def test_hopf_route_untangles():
    d = ut.gen_hopf_link(64)
    lk = ut.linking_number(d.classes[0].cloud.points, d.classes[1].cloud.points)
    assert abs(abs(lk) - 1.0) < 0.05
    targets = [ut.Ball([20.0, 0.0, 0.0], 2.0), ut.Ball([-20.0, 0.0, 0.0], 2.0)]
    lifted = ut.lift_relocate_project(d, targets)
    for img, tgt in zip(lifted.images, targets):
        assert ut.ball_contains_cloud(tgt, img)
    images = ut.LabeledDataset()
    images.classes = [
        ut.LabeledClass(c.label, net_img)
        for c, net_img in zip(d.classes, (ut.hopf_network().eval_cloud(c.cloud) for c in d.classes))
    ]
    cert = ut.certify_pairwise(images)
    assert cert.all_separable and cert.pairs[0].margin > 0


def test_swiss_roundtrip():
    roll = ut.gen_swiss_roll(8.0, 21.0, 12, 12)
    worst = 0.0
    for p, (s, t) in zip(roll.cloud.points, roll.params):
        s2, t2 = ut.unroll_swiss(p)
        worst = max(worst, abs(s2 - s), abs(t2 - t))
    assert worst <= 1e-9


def test_csv_roundtrip(tmp_path):
    d = ut.gen_toy_abc(20, 3)
    path = str(tmp_path / "toy.csv")
    ut.write_labeled_csv(d, path)
    back = ut.read_labeled_csv(path)
    assert [c.label for c in back.classes] == [c.label for c in d.classes]
    assert back.classes[0].cloud.points == d.classes[0].cloud.points
