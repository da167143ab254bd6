package app.net;

import android.os.PowerManager;

public class ReacquireInLoop {
    private PowerManager.WakeLock wakeLock;

    public void onConnectivityRestored(boolean pending) {
        while (pending) {
            wakeLock.acquire();
            pending = syncOnce();
        }
    }

    private boolean syncOnce() {
        return false;
    }
}
