from .pdu import ProtectedPdu
from .channel import LinkChannel
from .endpoint import EndpointState, protect, unprotect, create_endpoints
from .scenario import (Link, Scenario, EventKind, TamperTarget, ScenarioEvent,
                       load_script, parse_script, acceptance_script,
                       run_link_scenario)
from .transcript import Verdict, Transcript, TranscriptEntry
from .bearer_config import Plane, KeyRole, RoleKey, Stratum, BearerConfig
from .bearer_builder import BearerConfigBuilder
