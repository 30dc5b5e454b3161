from .errors import ChannelModelError, LayoutError
from .layout import CellLayout, build_layout
from .users import UserDrop, drop_users
from .channels import (
    ChannelSet,
    FadingParams,
    draw_channels,
    generate_channels,
    iid_channels,
    large_scale_gains,
)
from .whitening import interference_covariance, whiten_interference
