from enum import Enum


class SystemEnum(Enum):
    """ built-in mechanical systems on trivial bundles """
    disk = "disk"
    disk_one_stage = "disk-one-stage"
    decoupled_test = "decoupled-test"
    charged_particle = "charged-particle"


class ModelEnum(Enum):
    """ kind of dynamics a run configuration describes """
    algebra = "algebra"
    bundle = "bundle"
