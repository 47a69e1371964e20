from ...runner import Command as Run
from ..base import DiffposetCommand


class Command(DiffposetCommand):
    help = 'Verifies (DU_n + kI) v_{n,k} = t_n and the minimal integral multiplier'
    command = Run.FUNDAMENTAL
