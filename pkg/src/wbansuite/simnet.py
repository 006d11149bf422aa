"""Deterministic frame-slot simulator with an adversary harness.

Topology per the suite: body sensors speak the body-side scheme to the
central controller, which aggregates readings and speaks the long-haul
scheme to the monitoring station; the intermediary phone is a
transparent relay and is not modeled. Time advances in rounds; every
hop takes one round, and each channel direction drops frames
independently. All randomness that is not protocol state comes from
seeded generators, so equal (scenario, seed) reproduce byte-identical
traces.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path

from .bits import Bits
from .config import PROFILE_NAMES, ProtocolConfig, simulation_config
from .errors import AlarmLatchedError, CodecError, ScenarioError
from .framing import (
    DataFrame,
    KemesisWireFrame,
    deserialize_ack,
    deserialize_iamkeys,
    deserialize_kemesis,
    serialize_ack,
    serialize_iamkeys,
    serialize_kemesis,
)
from .iamkeys import SENDER_SELECTOR_SEED, IamkeysReceiver, IamkeysSender
from .kemesis import ROLE_SENSOR, ROLE_WCC, KemesisEndpoint, make_dummy_table
from .rng import keystream

ROLE_MONITOR = "monitor"

WCC_KEMESIS_SELECTOR_SEED = 0x2E3F
SENSOR_SELECTOR_SEED_BASE = 0x0A11
SENSOR_SELECTOR_SEED_STEP = 0x0111

#: Delivery-only rounds appended after the last emission so in-flight
#: frames and acknowledgements can land.
DRAIN_ROUNDS = 3

KIND_IAMKEYS = "iamkeys-data"
KIND_KEMESIS = "kemesis-data"
KIND_CONTROL = "kemesis-control"
KIND_IAMKEYS_ACK = "iamkeys-ack"
KIND_KEMESIS_ACK = "kemesis-ack"


class Algorithm(enum.Enum):
    IAMKEYS = "iamkeys"
    KEMESIS = "kemesis"


def chooser_dispatch(node, peer) -> Algorithm:
    """Pick the key-generation algorithm for a link by the peers' roles."""
    pair = (node.role, peer.role)
    if pair in ((ROLE_WCC, ROLE_MONITOR), (ROLE_MONITOR, ROLE_WCC)):
        return Algorithm.IAMKEYS
    if pair in ((ROLE_WCC, ROLE_SENSOR), (ROLE_SENSOR, ROLE_WCC)):
        return Algorithm.KEMESIS
    raise ScenarioError(f"no algorithm for link {node.role} <-> {peer.role}")


@dataclass(frozen=True)
class AdversaryAction:
    """One scripted adversary or channel event.

    kinds: replay (re-inject captured frame), flip (inject with one bit
    inverted), drop-data / drop-ack (deterministically lose the long-haul
    frame of a given round, or its acknowledgement).
    """

    at: int
    kind: str
    index: int = 0
    bit: int = 0

    def __post_init__(self):
        if self.kind not in ("replay", "flip", "drop-data", "drop-ack"):
            raise ScenarioError(f"unknown action kind: {self.kind!r}")
        if self.at < 1:
            raise ScenarioError(f"action round must be >= 1, got {self.at}")


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything a run needs; identical configs give identical traces."""

    frames: int = 100
    loss: float = 0.0
    seed: int = 1
    profile: str = "analysis"
    iamkeys_loss_data: float | None = None
    iamkeys_loss_ack: float | None = None
    kemesis_loss_data: float | None = None
    kemesis_loss_ack: float | None = None
    refresh_period: int | None = None
    sensors: int = 3
    actions: tuple[AdversaryAction, ...] = ()

    def __post_init__(self):
        if self.frames < 1:
            raise ScenarioError(f"frames must be >= 1, got {self.frames}")
        if self.profile not in PROFILE_NAMES:
            raise ScenarioError(f"unknown profile: {self.profile!r}")
        for name in ("loss", "iamkeys_loss_data", "iamkeys_loss_ack",
                     "kemesis_loss_data", "kemesis_loss_ack"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ScenarioError(f"{name} must be within [0, 1], got {value}")
        if self.sensors < 0:
            raise ScenarioError("sensors must be >= 0")
        if self.refresh_period is not None and self.refresh_period < 1:
            raise ScenarioError("refresh_period must be >= 1")
        object.__setattr__(self, "actions", tuple(self.actions))


def parse_script(text: str) -> tuple[AdversaryAction, ...]:
    """Parse adversary script lines.

    Grammar, one directive per line ('#' starts a comment):
        at <round>: replay <capture-index>
        at <round>: flip <capture-index> <bit>
        at <round>: drop data
        at <round>: drop ack
    """
    actions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, rest = line.split(":", 1)
            if head.split()[0] != "at":
                raise ValueError("expected 'at <round>:'")
            at = int(head.split()[1])
            parts = rest.split()
            verb = parts[0]
            if verb == "replay":
                actions.append(AdversaryAction(at, "replay", index=int(parts[1])))
            elif verb == "flip":
                actions.append(AdversaryAction(at, "flip", index=int(parts[1]),
                                               bit=int(parts[2])))
            elif verb == "drop":
                which = parts[1]
                if which not in ("data", "ack"):
                    raise ValueError("drop takes 'data' or 'ack'")
                actions.append(AdversaryAction(at, f"drop-{which}"))
            else:
                raise ValueError(f"unknown directive {verb!r}")
        except (ValueError, IndexError) as exc:
            raise ScenarioError(f"script line {lineno}: {raw!r}: {exc}") from exc
    return tuple(actions)


_SCENARIO_KEYS = {
    "frames": int,
    "loss": float,
    "seed": int,
    "profile": str,
    "iamkeys_loss_data": float,
    "iamkeys_loss_ack": float,
    "kemesis_loss_data": float,
    "kemesis_loss_ack": float,
    "refresh_period": int,
    "sensors": int,
}


def parse_scenario(text: str) -> dict:
    """Parse 'key = value' scenario lines into constructor arguments."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"scenario line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "script":
            values["script"] = value
            continue
        if key not in _SCENARIO_KEYS:
            raise ScenarioError(f"scenario line {lineno}: unknown key {key!r}")
        try:
            values[key] = _SCENARIO_KEYS[key](value)
        except ValueError as exc:
            raise ScenarioError(f"scenario line {lineno}: bad value for {key}") from exc
    return values


def load_scenario_file(path: str | Path) -> ScenarioConfig:
    """Read a scenario file; a 'script = <path>' entry is resolved
    relative to the scenario file itself."""
    path = Path(path)
    values = parse_scenario(path.read_text())
    script = values.pop("script", None)
    actions: tuple[AdversaryAction, ...] = ()
    if script:
        script_path = Path(script)
        if not script_path.is_absolute():
            script_path = path.parent / script_path
        actions = parse_script(script_path.read_text())
    return ScenarioConfig(actions=actions, **values)


@dataclass
class Message:
    kind: str
    src: str
    dst: str
    bits: Bits
    injected: bool = False


class Adversary:
    """Passive wiretap on every channel plus scripted injections.

    Frames are captured at transmission time, before channel loss, so
    dropped frames are replayable too.
    """

    def __init__(self):
        self.captured: list[Message] = []

    def record(self, msg: Message) -> None:
        self.captured.append(Message(msg.kind, msg.src, msg.dst, msg.bits))

    def get(self, index: int) -> Message:
        if not 0 <= index < len(self.captured):
            raise ScenarioError(
                f"capture index {index} out of range ({len(self.captured)} captured)"
            )
        return self.captured[index]

    def indices(self, kind: str) -> list[int]:
        return [i for i, m in enumerate(self.captured) if m.kind == kind]


def kemesis_bruteforce_candidates(frame: KemesisWireFrame, true_key: Bits,
                                  config: ProtocolConfig) -> tuple[int, bool]:
    """Measure the honest strength of a captured body-side frame.

    Enumerates every nonzero seed and reports how many distinct keys the
    eavesdropper must consider, and whether the real key is among them
    (it always is; the artifact reports the size rather than claiming
    confidentiality).
    """
    width = config.kemesis_field_bits
    candidates = set()
    for seed in range(1, 256):
        k1 = keystream(seed, width, config.zero_seed_substitute)
        key = k1 if frame.key_used == 0 else ~k1
        candidates.add(key.value)
    return len(candidates), true_key.value in candidates


@dataclass(frozen=True)
class TraceEvent:
    slot: int
    actor: str
    event: str
    detail: str


class SensorNode:
    role = ROLE_SENSOR

    def __init__(self, name: str, endpoint: KemesisEndpoint):
        self.name = name
        self.endpoint = endpoint
        self.inbox: list[Message] = []


class WccNode:
    role = ROLE_WCC

    def __init__(self, sender: IamkeysSender, kemesis: KemesisEndpoint):
        self.name = "wcc"
        self.iamkeys = sender
        self.kemesis = kemesis
        self.latest: dict[str, int] = {}


class MonitorNode:
    role = ROLE_MONITOR

    def __init__(self, receiver: IamkeysReceiver):
        self.name = "monitor"
        self.receiver = receiver


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    protocol: ProtocolConfig
    events: list[TraceEvent]
    counts: Counter
    emitted_data: list[DataFrame]
    accepted_data: list[DataFrame]
    key_checks: list[tuple[str, int, str, str]]
    frame_kinds: list[str]
    sender_alarm_round: int | None
    receiver_alarm_round: int | None
    injected_accepts: int
    desync_events: int
    refresh_commits: int
    bruteforce_candidates: int | None
    bruteforce_found: bool | None
    nodes: dict = field(repr=False, default_factory=dict)
    adversary: Adversary = field(repr=False, default_factory=Adversary)

    def summary_lines(self) -> list[str]:
        lines = [
            f"frames = {self.config.frames}",
            f"seed = {self.config.seed}",
            f"profile = {self.config.profile}",
        ]
        for key in sorted(self.counts):
            lines.append(f"{key} = {self.counts[key]}")
        lines.append(f"sender-alarm-round = {self.sender_alarm_round}")
        lines.append(f"receiver-alarm-round = {self.receiver_alarm_round}")
        lines.append(f"desync-events = {self.desync_events}")
        lines.append(f"injected-accepts = {self.injected_accepts}")
        if self.bruteforce_candidates is not None:
            lines.append(f"kemesis-bruteforce-candidates = {self.bruteforce_candidates}")
            lines.append(f"kemesis-bruteforce-true-key-found = {self.bruteforce_found}")
        return lines


class _Simulation:
    def __init__(self, sc: ScenarioConfig):
        self.sc = sc
        pconfig = simulation_config(sc.profile)
        if sc.refresh_period is not None:
            pconfig = replace(pconfig, refresh_period=sc.refresh_period)
        self.pconfig = pconfig

        # Channel and environment randomness are separate streams so the
        # protocol machines (whose selectors are fixed constants) are not
        # perturbed by the loss pattern.
        self.chan_rng = random.Random(sc.seed)
        self.env_rng = random.Random(sc.seed ^ 0x5DEECE66D)

        table = make_dummy_table(pconfig)
        self.sensors = [
            SensorNode(
                f"s{i + 1}",
                KemesisEndpoint(
                    pconfig, ROLE_SENSOR, table,
                    selector_seed=SENSOR_SELECTOR_SEED_BASE + i * SENSOR_SELECTOR_SEED_STEP,
                ),
            )
            for i in range(sc.sensors)
        ]
        self.wcc = WccNode(
            IamkeysSender(pconfig, selector_seed=SENDER_SELECTOR_SEED),
            KemesisEndpoint(pconfig, ROLE_WCC, table,
                            selector_seed=WCC_KEMESIS_SELECTOR_SEED),
        )
        self.monitor = MonitorNode(IamkeysReceiver(pconfig))

        self.adversary = Adversary()
        self.in_flight: list[tuple[int, Message]] = []
        self.events: list[TraceEvent] = []
        self.counts: Counter = Counter()

        self.iam_data_loss = self._loss(sc.iamkeys_loss_data)
        self.iam_ack_loss = self._loss(sc.iamkeys_loss_ack)
        self.kem_data_loss = self._loss(sc.kemesis_loss_data)
        self.kem_ack_loss = self._loss(sc.kemesis_loss_ack)
        self.drop_data_rounds = {a.at for a in sc.actions if a.kind == "drop-data"}
        self.drop_ack_rounds = {a.at for a in sc.actions if a.kind == "drop-ack"}

        self.emitted_data: list[DataFrame] = []
        self.accepted_data: list[DataFrame] = []
        self.key_checks: list[tuple[str, int, str, str]] = []
        self.iamkeys_keys: dict[int, str] = {}
        self.kemesis_keys: dict[tuple[str, int], str] = {}
        self.frame_kinds: set[str] = set()
        self.sender_alarm_round: int | None = None
        self.receiver_alarm_round: int | None = None
        self.injected_accepts = 0
        self.desync_events = 0
        self.refresh_commits = 0
        self.first_kemesis_capture: tuple[KemesisWireFrame, Bits] | None = None

    def _loss(self, override: float | None) -> float:
        return self.sc.loss if override is None else override

    def log(self, slot: int, actor: str, event: str, detail: str = "") -> None:
        self.events.append(TraceEvent(slot, actor, event, detail))
        self.counts[event] += 1

    def lost(self, probability: float) -> bool:
        if probability <= 0.0:
            return False
        if probability >= 1.0:
            return True
        return self.chan_rng.random() < probability

    def send(self, slot: int, msg: Message, loss: float, scripted_drop: bool = False) -> None:
        self.frame_kinds.add(msg.kind)
        if not msg.injected:
            self.adversary.record(msg)
        if scripted_drop:
            self.log(slot, "channel", "drop",
                     f"{msg.kind} {msg.src}->{msg.dst} scripted")
            return
        if self.lost(loss):
            self.log(slot, "channel", "drop", f"{msg.kind} {msg.src}->{msg.dst}")
            return
        self.in_flight.append((slot + 1, msg))

    # ------------------------------------------------------------------
    # Delivery handling

    def dispatch(self, slot: int, msg: Message) -> None:
        if msg.dst == "monitor":
            self.deliver_to_monitor(slot, msg)
        elif msg.dst == "wcc":
            self.deliver_to_wcc(slot, msg)
        else:
            self.deliver_to_sensor(slot, msg)

    def _sensor(self, name: str) -> SensorNode:
        for node in self.sensors:
            if node.name == name:
                return node
        raise ScenarioError(f"no such sensor: {name!r}")

    def deliver_to_monitor(self, slot: int, msg: Message) -> None:
        tag = " injected" if msg.injected else ""
        try:
            frame = deserialize_iamkeys(msg.bits, self.pconfig)
        except CodecError as exc:
            self.log(slot, "monitor", "reject", f"codec-error: {exc}{tag}")
            self.counts["reject:codec-error"] += 1
            return
        result = self.monitor.receiver.accept(frame)
        if not result.accepted:
            self.log(slot, "monitor", "reject",
                     f"{result.reason} seq={frame.seq_no}{tag}")
            self.counts[f"reject:{result.reason}"] += 1
            return
        self.log(slot, "monitor", "accept",
                 f"iamkeys seq={frame.seq_no} gap={result.gap}{tag}")
        self.counts["iamkeys-accept"] += 1
        if msg.injected:
            self.injected_accepts += 1
        self.accepted_data.append(result.data)
        sender_key = self.iamkeys_keys.get(frame.seq_no, "?")
        self.key_checks.append(
            ("iamkeys", frame.seq_no, sender_key, result.keys.k1.to_hex())
        )
        if self.monitor.receiver.alarmed and self.receiver_alarm_round is None:
            self.receiver_alarm_round = slot
            self.log(slot, "monitor", "alarm",
                     f"delivery gap of {result.gap} frames")
        ack_bits = serialize_ack(result.ack)
        ack_round = frame.seq_no - self.pconfig.data_seq_start + 1
        self.send(slot, Message(KIND_IAMKEYS_ACK, "monitor", "wcc", ack_bits),
                  self.iam_ack_loss, scripted_drop=ack_round in self.drop_ack_rounds)

    def deliver_to_wcc(self, slot: int, msg: Message) -> None:
        tag = " injected" if msg.injected else ""
        if msg.kind == KIND_IAMKEYS_ACK:
            try:
                ack = deserialize_ack(msg.bits)
            except CodecError as exc:
                self.log(slot, "wcc", "reject", f"codec-error: {exc}{tag}")
                return
            committed = self.wcc.iamkeys.on_ack(ack)
            self.log(slot, "wcc", "ack",
                     f"iamkeys seq={ack.acked_seq_no} "
                     f"{'committed' if committed else 'ignored'}{tag}")
            return
        if msg.kind == KIND_KEMESIS_ACK:
            try:
                ack = deserialize_ack(msg.bits)
            except CodecError as exc:
                self.log(slot, "wcc", "reject", f"codec-error: {exc}{tag}")
                return
            outcome = self.wcc.kemesis.on_ack(ack)
            self.log(slot, "wcc", "ack",
                     f"kemesis seq={ack.acked_seq_no} {outcome or 'ignored'}{tag}")
            if outcome == "refresh-committed":
                self.refresh_commits += 1
                self.check_desync(slot)
            return
        # Body-side data (or a replayed/forged control frame aimed here).
        try:
            frame = deserialize_kemesis(msg.bits, self.pconfig)
        except CodecError as exc:
            self.log(slot, "wcc", "reject", f"codec-error: {exc}{tag}")
            self.counts["reject:codec-error"] += 1
            return
        result = self.wcc.kemesis.accept(frame, peer=msg.src)
        if not result.accepted:
            self.log(slot, "wcc", "reject",
                     f"{result.reason} {msg.kind} seq={frame.seq_no} from={msg.src}{tag}")
            self.counts[f"reject:{result.reason}"] += 1
            return
        self.log(slot, "wcc", "accept",
                 f"kemesis seq={frame.seq_no} from={msg.src}{tag}")
        self.counts["kemesis-accept"] += 1
        if msg.injected:
            self.injected_accepts += 1
        if not result.control:
            self.wcc.latest[msg.src] = result.value
        sender_key = self.kemesis_keys.get((msg.src, frame.seq_no), "?")
        self.key_checks.append(
            ("kemesis", frame.seq_no, sender_key, result.key.to_hex())
        )
        self.send(slot, Message(KIND_KEMESIS_ACK, "wcc", msg.src,
                                serialize_ack(result.ack)), self.kem_ack_loss)

    def deliver_to_sensor(self, slot: int, msg: Message) -> None:
        node = self._sensor(msg.dst)
        if msg.kind == KIND_KEMESIS_ACK:
            outcome = node.endpoint.on_ack(deserialize_ack(msg.bits))
            if outcome == "woke":
                self.log(slot, node.name, "wake", "")
            queued, node.inbox = node.inbox, []
            for pending in queued:
                self.process_control(slot, node, pending)
            return
        # Control frames reach a sleeping sensor's queue; it only
        # processes them once the acknowledgement wakes it.
        if not node.endpoint.awake:
            node.inbox.append(msg)
            self.log(slot, node.name, "queued", f"{msg.kind} while asleep")
            return
        self.process_control(slot, node, msg)

    def process_control(self, slot: int, node: SensorNode, msg: Message) -> None:
        tag = " injected" if msg.injected else ""
        try:
            frame = deserialize_kemesis(msg.bits, self.pconfig)
        except CodecError as exc:
            self.log(slot, node.name, "reject", f"codec-error: {exc}{tag}")
            self.counts["reject:codec-error"] += 1
            return
        result = node.endpoint.accept(frame, peer=msg.src)
        if not result.accepted:
            self.log(slot, node.name, "reject",
                     f"{result.reason} {msg.kind} seq={frame.seq_no}{tag}")
            self.counts[f"reject:{result.reason}"] += 1
            return
        applied = " applied" if result.control else ""
        self.log(slot, node.name, "accept",
                 f"kemesis-control seq={frame.seq_no}{applied}{tag}")
        self.counts["control-accept"] += 1
        if msg.injected:
            self.injected_accepts += 1
        self.send(slot, Message(KIND_KEMESIS_ACK, node.name, "wcc",
                                serialize_ack(result.ack)), self.kem_ack_loss)

    def check_desync(self, slot: int) -> None:
        for node in self.sensors:
            cells = self.wcc.kemesis.table.diff(node.endpoint.table)
            if cells:
                self.desync_events += 1
                self.log(slot, "wcc", "desync",
                         f"{node.name} differs at {len(cells)} cell(s)")

    # ------------------------------------------------------------------
    # Per-round phases

    def run_injections(self, slot: int) -> None:
        for action in self.sc.actions:
            if action.at != slot or action.kind.startswith("drop-"):
                continue
            original = self.adversary.get(action.index)
            bits = original.bits if action.kind == "replay" else original.bits.flip(action.bit)
            self.log(slot, "adversary", "inject",
                     f"{action.kind} capture={action.index} {original.kind} "
                     f"-> {original.dst}")
            self.dispatch(slot, Message(original.kind, original.src, original.dst,
                                        bits, injected=True))

    def run_emissions(self, slot: int) -> None:
        for node in self.sensors:
            if not node.endpoint.awake:
                self.log(slot, node.name, "skip-asleep", "")
                continue
            reading = self.env_rng.randrange(256)
            emit = node.endpoint.emit_data(reading)
            self.kemesis_keys[(node.name, emit.frame.seq_no)] = emit.key.to_hex()
            self.log(slot, node.name, "emit",
                     f"kemesis seq={emit.frame.seq_no} cell=({emit.frame_no},{emit.field_no}) "
                     f"key_used={emit.key_used}")
            self.send(slot, Message(KIND_KEMESIS, node.name, "wcc",
                                    serialize_kemesis(emit.frame, self.pconfig)),
                      self.kem_data_loss)

        readings = tuple(
            self.wcc.latest.get(f"s{i + 1}", 0)
            for i in range(self.pconfig.num_readings)
        )
        data = DataFrame(self.wcc.iamkeys.next_seq, slot, readings)
        try:
            emit = self.wcc.iamkeys.emit(data)
        except AlarmLatchedError:
            self.log(slot, "wcc", "alarm-blocked", f"seq={data.seq_no} not sent")
            return
        self.emitted_data.append(data)
        self.iamkeys_keys[emit.frame.seq_no] = emit.keys.k1.to_hex()
        self.log(slot, "wcc", "emit",
                 f"iamkeys seq={emit.frame.seq_no} ref={emit.frame.ref_frm_seq_no} "
                 f"field={emit.field_no} tone={emit.tone}")
        if self.wcc.iamkeys.alarmed and self.sender_alarm_round is None:
            self.sender_alarm_round = slot
            self.log(slot, "wcc", "alarm",
                     f"{self.pconfig.alarm_threshold} frames without ACK")
        self.send(slot, Message(KIND_IAMKEYS, "wcc", "monitor",
                                serialize_iamkeys(emit.frame, self.pconfig)),
                  self.iam_data_loss, scripted_drop=slot in self.drop_data_rounds)

    def run_refresh(self, slot: int) -> None:
        if not self.sensors:
            return
        if slot % self.pconfig.refresh_period:
            return
        endpoint = self.wcc.kemesis
        if endpoint.pending_refresh is not None:
            pending = endpoint.abandon_refresh()
            self.desync_events += 1
            self.log(slot, "wcc", "refresh-abandoned",
                     f"seq={pending[0]} cell=({pending[1]},{pending[2]}) never acked")
        emit = endpoint.emit_refresh()
        self.log(slot, "wcc", "refresh-emit",
                 f"seq={emit.frame.seq_no} cell=({emit.frame_no},{emit.field_no}) "
                 f"value={emit.new_value:#x}")
        bits = serialize_kemesis(emit.frame, self.pconfig)
        for node in self.sensors:
            self.send(slot, Message(KIND_CONTROL, "wcc", node.name, bits),
                      self.kem_data_loss)

    def run(self) -> ScenarioResult:
        total_rounds = self.sc.frames + DRAIN_ROUNDS
        for slot in range(1, total_rounds + 1):
            due = [m for when, m in self.in_flight if when == slot]
            self.in_flight = [(when, m) for when, m in self.in_flight if when != slot]
            for msg in due:
                self.dispatch(slot, msg)
            self.run_injections(slot)
            if slot <= self.sc.frames:
                self.run_emissions(slot)
                self.run_refresh(slot)

        bruteforce = self._bruteforce()
        return ScenarioResult(
            config=self.sc,
            protocol=self.pconfig,
            events=self.events,
            counts=self.counts,
            emitted_data=self.emitted_data,
            accepted_data=self.accepted_data,
            key_checks=self.key_checks,
            frame_kinds=sorted(self.frame_kinds),
            sender_alarm_round=self.sender_alarm_round,
            receiver_alarm_round=self.receiver_alarm_round,
            injected_accepts=self.injected_accepts,
            desync_events=self.desync_events,
            refresh_commits=self.refresh_commits,
            bruteforce_candidates=bruteforce[0],
            bruteforce_found=bruteforce[1],
            nodes={node.name: node for node in
                   [self.wcc, self.monitor, *self.sensors]},
            adversary=self.adversary,
        )

    def _bruteforce(self) -> tuple[int | None, bool | None]:
        for index in self.adversary.indices(KIND_KEMESIS):
            msg = self.adversary.captured[index]
            frame = deserialize_kemesis(msg.bits, self.pconfig)
            true_key_hex = self.kemesis_keys.get((msg.src, frame.seq_no))
            if true_key_hex is None:
                continue
            true_key = Bits.from_hex(true_key_hex, self.pconfig.kemesis_field_bits)
            return kemesis_bruteforce_candidates(frame, true_key, self.pconfig)
        return None, None


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    """Execute one deterministic scenario and return its full trace."""
    return _Simulation(config).run()


def write_trace_files(result: ScenarioResult, outdir: str | Path) -> dict[str, Path]:
    """Write trace.log, trace.csv, and summary.txt under `outdir`."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    log_path = outdir / "trace.log"
    with log_path.open("w") as fh:
        for ev in result.events:
            fh.write(f"[{ev.slot:04d}] {ev.actor:<8} {ev.event:<18} {ev.detail}\n")

    csv_path = outdir / "trace.csv"
    with csv_path.open("w") as fh:
        fh.write("slot,actor,event,detail\n")
        for ev in result.events:
            detail = ev.detail.replace('"', "'")
            fh.write(f'{ev.slot},{ev.actor},{ev.event},"{detail}"\n')

    summary_path = outdir / "summary.txt"
    summary_path.write_text("\n".join(result.summary_lines()) + "\n")
    return {"log": log_path, "csv": csv_path, "summary": summary_path}
