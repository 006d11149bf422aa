"""WBAN security suite: independent key generation at both endpoints.

Two schemes share one idea: the encryption key for every frame is
derived, at sender and receiver separately, from secret material both
already hold, so no key ever crosses the channel. The package provides
the endpoint state machines, bit-exact frame codecs, a deterministic
lossy-channel simulator with an adversary harness, and the gate-level
operation-count model used to size both schemes.
"""

from .bits import Bits, rotl8
from .config import ProtocolConfig, ZERO_SEED_SUBSTITUTE, simulation_config
from .errors import (
    AlarmLatchedError,
    CodecError,
    RefreshPendingError,
    ScenarioError,
    SensorAsleepError,
    WbanError,
    WidthMismatchError,
    ZeroStateError,
)
from .framing import (
    AckFrame,
    DataFrame,
    IamkeysWireFrame,
    KemesisWireFrame,
    deserialize_ack,
    deserialize_iamkeys,
    deserialize_kemesis,
    serialize_ack,
    serialize_iamkeys,
    serialize_kemesis,
)
from .iamkeys import (
    IamkeysReceiver,
    IamkeysSender,
    ReferenceFrameList,
    choose_seed,
    decrypt_block,
    encrypt_block,
    make_dummy_reference_frames,
    sign_frame,
)
from .kemesis import (
    DummyTable,
    KemesisEndpoint,
    kemesis_decrypt,
    kemesis_derive_key,
    kemesis_encrypt,
    kemesis_sign,
    make_dummy_table,
)
from .opcount import (
    CostParams,
    OpCounter,
    iamkeys_decrypt_cost,
    iamkeys_encrypt_cost,
    kemesis_decrypt_cost,
    kemesis_encrypt_cost,
)
from .rng import (
    KeyPair,
    LfsrState,
    derive_keypair,
    keystream,
    lfsr_step,
    new_selector,
    pick_index,
    pick_uniform,
)
from .simnet import (
    Adversary,
    AdversaryAction,
    Algorithm,
    ScenarioConfig,
    ScenarioResult,
    chooser_dispatch,
    run_scenario,
    write_trace_files,
)

__version__ = "0.1.0"
