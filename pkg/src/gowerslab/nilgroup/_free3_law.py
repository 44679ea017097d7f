"""Free 3-step nilpotent group on three generators: frozen multiplication law.

GENERATED by tools/gen_free3_law.py -- do not edit by hand.
"""

BASIS = ('1', '2', '3', '21', '211', '31', '311', '32', '322', '212', '312', '213', '313', '323')


def mul(t, u):
    """Coordinates of t * u."""
    return (
        t[0] + u[0],
        t[1] + u[1],
        t[2] + u[2],
        t[1]*u[0] + t[3] + u[3],
        t[1]*u[0]**2/2 - t[1]*u[0]/2 + t[3]*u[0] + t[4] + u[4],
        t[2]*u[0] + t[5] + u[5],
        t[2]*u[0]**2/2 - t[2]*u[0]/2 + t[5]*u[0] + t[6] + u[6],
        t[2]*u[1] + t[7] + u[7],
        t[2]*u[1]**2/2 - t[2]*u[1]/2 + t[7]*u[1] + t[8] + u[8],
        t[1]**2*u[0]/2 + t[1]*u[0]*u[1] - t[1]*u[0]/2 + t[3]*u[1] + t[9] + u[9],
        t[10] + t[2]*u[0]*u[1] + t[5]*u[1] + t[7]*u[0] + u[10],
        t[11] + t[1]*t[2]*u[0] + t[1]*u[0]*u[2] + t[3]*u[2] - t[7]*u[0] + u[11],
        t[12] + t[2]**2*u[0]/2 + t[2]*u[0]*u[2] - t[2]*u[0]/2 + t[5]*u[2] + u[12],
        t[13] + t[2]**2*u[1]/2 + t[2]*u[1]*u[2] - t[2]*u[1]/2 + t[7]*u[2] + u[13],
    )


def inv(t):
    """Coordinates of t^-1."""
    return (
        -t[0],
        -t[1],
        -t[2],
        t[0]*t[1] - t[3],
        -t[0]**2*t[1]/2 - t[0]*t[1]/2 + t[0]*t[3] - t[4],
        t[0]*t[2] - t[5],
        -t[0]**2*t[2]/2 - t[0]*t[2]/2 + t[0]*t[5] - t[6],
        t[1]*t[2] - t[7],
        -t[1]**2*t[2]/2 - t[1]*t[2]/2 + t[1]*t[7] - t[8],
        -t[0]*t[1]**2/2 - t[0]*t[1]/2 + t[1]*t[3] - t[9],
        -t[0]*t[1]*t[2] + t[0]*t[7] - t[10] + t[1]*t[5],
        -t[0]*t[7] - t[11] + t[2]*t[3],
        -t[0]*t[2]**2/2 - t[0]*t[2]/2 - t[12] + t[2]*t[5],
        -t[13] - t[1]*t[2]**2/2 - t[1]*t[2]/2 + t[2]*t[7],
    )


def _rmul_1(t, m):
    """t * e_1^m."""
    return (
        m + t[0],
        t[1],
        t[2],
        m*t[1] + t[3],
        m**2*t[1]/2 - m*t[1]/2 + m*t[3] + t[4],
        m*t[2] + t[5],
        m**2*t[2]/2 - m*t[2]/2 + m*t[5] + t[6],
        t[7],
        t[8],
        m*t[1]**2/2 - m*t[1]/2 + t[9],
        m*t[7] + t[10],
        m*t[1]*t[2] - m*t[7] + t[11],
        m*t[2]**2/2 - m*t[2]/2 + t[12],
        t[13],
    )


def _rmul_2(t, m):
    """t * e_2^m."""
    return (
        t[0],
        m + t[1],
        t[2],
        t[3],
        t[4],
        t[5],
        t[6],
        m*t[2] + t[7],
        m**2*t[2]/2 - m*t[2]/2 + m*t[7] + t[8],
        m*t[3] + t[9],
        m*t[5] + t[10],
        t[11],
        t[12],
        m*t[2]**2/2 - m*t[2]/2 + t[13],
    )


def _rmul_3(t, m):
    """t * e_3^m."""
    return (
        t[0],
        t[1],
        m + t[2],
        t[3],
        t[4],
        t[5],
        t[6],
        t[7],
        t[8],
        t[9],
        t[10],
        m*t[3] + t[11],
        m*t[5] + t[12],
        m*t[7] + t[13],
    )


def _rmul_21(t, m):
    """t * e_21^m."""
    return (
        t[0],
        t[1],
        t[2],
        m + t[3],
        t[4],
        t[5],
        t[6],
        t[7],
        t[8],
        t[9],
        t[10],
        t[11],
        t[12],
        t[13],
    )


def _rmul_211(t, m):
    """t * e_211^m."""
    return (
        t[0],
        t[1],
        t[2],
        t[3],
        m + t[4],
        t[5],
        t[6],
        t[7],
        t[8],
        t[9],
        t[10],
        t[11],
        t[12],
        t[13],
    )


def _rmul_31(t, m):
    """t * e_31^m."""
    return (
        t[0],
        t[1],
        t[2],
        t[3],
        t[4],
        m + t[5],
        t[6],
        t[7],
        t[8],
        t[9],
        t[10],
        t[11],
        t[12],
        t[13],
    )


def _rmul_311(t, m):
    """t * e_311^m."""
    return (
        t[0],
        t[1],
        t[2],
        t[3],
        t[4],
        t[5],
        m + t[6],
        t[7],
        t[8],
        t[9],
        t[10],
        t[11],
        t[12],
        t[13],
    )


def _rmul_32(t, m):
    """t * e_32^m."""
    return (
        t[0],
        t[1],
        t[2],
        t[3],
        t[4],
        t[5],
        t[6],
        m + t[7],
        t[8],
        t[9],
        t[10],
        t[11],
        t[12],
        t[13],
    )


def _rmul_322(t, m):
    """t * e_322^m."""
    return (
        t[0],
        t[1],
        t[2],
        t[3],
        t[4],
        t[5],
        t[6],
        t[7],
        m + t[8],
        t[9],
        t[10],
        t[11],
        t[12],
        t[13],
    )


def _rmul_212(t, m):
    """t * e_212^m."""
    return (
        t[0],
        t[1],
        t[2],
        t[3],
        t[4],
        t[5],
        t[6],
        t[7],
        t[8],
        m + t[9],
        t[10],
        t[11],
        t[12],
        t[13],
    )


def _rmul_312(t, m):
    """t * e_312^m."""
    return (
        t[0],
        t[1],
        t[2],
        t[3],
        t[4],
        t[5],
        t[6],
        t[7],
        t[8],
        t[9],
        m + t[10],
        t[11],
        t[12],
        t[13],
    )


def _rmul_213(t, m):
    """t * e_213^m."""
    return (
        t[0],
        t[1],
        t[2],
        t[3],
        t[4],
        t[5],
        t[6],
        t[7],
        t[8],
        t[9],
        t[10],
        m + t[11],
        t[12],
        t[13],
    )


def _rmul_313(t, m):
    """t * e_313^m."""
    return (
        t[0],
        t[1],
        t[2],
        t[3],
        t[4],
        t[5],
        t[6],
        t[7],
        t[8],
        t[9],
        t[10],
        t[11],
        m + t[12],
        t[13],
    )


def _rmul_323(t, m):
    """t * e_323^m."""
    return (
        t[0],
        t[1],
        t[2],
        t[3],
        t[4],
        t[5],
        t[6],
        t[7],
        t[8],
        t[9],
        t[10],
        t[11],
        t[12],
        m + t[13],
    )


RIGHT_MUL = (_rmul_1, _rmul_2, _rmul_3, _rmul_21, _rmul_211, _rmul_31, _rmul_311, _rmul_32, _rmul_322, _rmul_212, _rmul_312, _rmul_213, _rmul_313, _rmul_323)
